#pragma once

#include <optional>

#include "qga/oracle.hpp"

namespace qga {

/// A concretely realized family member: the group, the Z(chi)-chain witnesses
/// for the fast character path, and the formula-side decomposition.
struct RealizedGroup {
    Group group;
    GvzWitness witness;         // empty layers for abelian groups
    WeddDecomp formula;         // decomposition claimed by the formula engines
    bool expect_nested = true;  // predicate expectation for the verify suite
    std::string name;
};

RealizedGroup realize_two_gen(const TwoGenParams& t);
RealizedGroup realize_nenciu(Int n, Int p);
RealizedGroup realize_lewis(Int n, Int p);
RealizedGroup realize_abelian(const AbelianPType& t);

/// Nenciu presentation (generators a_1..a_n, b_n, b_{n-1}, ..., b_0).
PolycyclicSpec nenciu_presentation(Int n, Int p);

/// Maximal-class control group of order 3^4 (wreath-type, not a GVZ-group).
RealizedGroup realize_maximal_class_81();

/// All p-good tuples with alpha+beta+gamma == n.
std::vector<TwoGenParams> p_good_tuples(Int p, Int n);

/// Corpus tags used by the CLI and the acceptance suite.
std::vector<RealizedGroup> corpus(const std::string& tag);

struct VerifyOptions {
    bool with_pci = false;          // run the idempotent theorem checks
    std::optional<Int> bound;       // Dixon cap override
};

struct VerifyReport {
    std::string group;
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string to_json() const;
};

/// Formula vs oracle, GVZ predicates, the Galois/kernel lemma, and optionally
/// the idempotent theorem, for one realized group.
VerifyReport verify_group(const RealizedGroup& r, const VerifyOptions& opt = {});

/// Builds the oracle table: Dixon when the order is within bound, otherwise
/// the witness fast path.
CharTable oracle_table(const RealizedGroup& r, std::optional<Int> bound = std::nullopt);

}  // namespace qga
