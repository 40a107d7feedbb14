#pragma once

#include <optional>

#include "qga/cyclotomic.hpp"
#include "qga/decomp.hpp"
#include "qga/grouprep.hpp"

namespace qga {

/// Size cap for the Dixon path; QGA_ORACLE_BOUND overrides.
Int oracle_bound();

/// Complete irreducible character table with exact cyclotomic values over
/// Q(zeta_exp(G)). Values are stored as true eigenvalue multisets of roots of
/// unity, so syntactic comparison inside one table is comparison of numbers.
struct CharTable {
    Group group;
    ConjugacyClasses classes;
    Int exponent = 1;
    std::shared_ptr<const CyclotomicContext> ctx;
    Int identity_class = 0;
    std::vector<Int> degrees;                   // per character
    std::vector<std::vector<ZetaSum>> values;   // [character][class]

    Int char_count() const { return static_cast<Int>(degrees.size()); }
    const ZetaSum& value(Int chi, Int cls) const {
        return values[static_cast<size_t>(chi)][static_cast<size_t>(cls)];
    }
    CycInt canonical_value(Int chi, Int cls) const { return zeta_canonical(ctx, value(chi, cls)); }
};

/// Dixon-Burnside table over a finite field with q = 1 mod exp(G); both
/// orthogonality relations are verified exactly before returning.
CharTable character_table(const Group& g, std::optional<Int> bound = std::nullopt);

/// Witness subgroups Z_{delta_r} and [Z_{delta_r}, G] given by generators.
struct GvzWitnessLayer {
    Int delta = 1;
    std::vector<Int> z_gens;
    std::vector<Int> k_gens;
};
struct GvzWitness {
    std::vector<GvzWitnessLayer> layers;
};

/// Character table of a nested GVZ group built from linear characters of the
/// witness sections (no class-matrix eigenwork); verified like the full path.
CharTable gvz_fast_table(const Group& g, const GvzWitness& witness);

Subgroup char_center(const CharTable& t, Int chi);
Subgroup char_kernel(const CharTable& t, Int chi);

bool is_central_type(const CharTable& t, Int chi);
bool is_gvz(const CharTable& t);
bool is_nested_gvz(const CharTable& t);

struct GaloisClasses {
    std::vector<std::vector<Int>> classes;  // orbits of character indices
    std::vector<Int> class_of;              // character -> orbit index
};
GaloisClasses galois_classes(const CharTable& t);

/// Least d | exp(G) with all values of chi in Q(zeta_d).
Int field_conductor(const CharTable& t, Int chi);
/// [Q(chi) : Q].
Int field_degree(const CharTable& t, Int chi);

/// Character-theoretic Wedderburn decomposition of QG for odd p-groups.
WeddDecomp rational_decomposition(const CharTable& t);
WeddDecomp rational_decomposition(const Group& g, std::optional<Int> bound = std::nullopt);

/// Exact-rational element of QG.
class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;
    explicit GroupAlgebraElement(Group g)
        : group_(std::move(g)), coeffs_(static_cast<size_t>(group_.size())) {}

    const Group& group() const { return group_; }
    Rational& operator[](size_t i) { return coeffs_[i]; }
    const Rational& operator[](size_t i) const { return coeffs_[i]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    bool operator==(const GroupAlgebraElement& o) const { return coeffs_ == o.coeffs_; }

    bool is_idempotent() const { return *this * *this == *this; }
    bool is_zero() const;
    /// Commutes with every group generator.
    bool is_central() const;

private:
    Group group_;
    std::vector<Rational> coeffs_;
};

/// Identity element of QG.
GroupAlgebraElement algebra_one(const Group& g);
/// X-hat: averaged sum over a subgroup.
GroupAlgebraElement subgroup_hat(const Group& g, const Subgroup& s);

/// e(chi) over Q(zeta_e): scale * sum chi(g^-1) g. Kept in split form; the
/// idempotency check runs in exact integer cyclotomic arithmetic.
struct CycIdempotent {
    Group group;
    Rational scale;                // chi(1)/|G|
    std::vector<ZetaSum> values;   // chi(g^-1) per element
};
CycIdempotent idempotent_e(const CharTable& t, Int chi);

/// e_Q(chi) = sum of e over the Galois orbit; rational coefficients
/// (NonRationalCoefficients if not), verified idempotent and central.
GroupAlgebraElement idempotent_eQ(const CharTable& t, Int chi);

/// epsilon(H, N) = prod over minimal nontrivial normal subgroups D/N of H/N
/// of (N-hat - D-hat); H-hat when N = H. Verified idempotent.
GroupAlgebraElement epsilon_idempotent(const Group& g, const Subgroup& h, const Subgroup& n);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct PciReport {
    std::string group;
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string to_json() const;
};

/// Per nonlinear character: e_Q(chi) = epsilon(Z(chi), ker chi) exactly, plus
/// the dimension/conductor surrogate for the simple-component isomorphism.
PciReport verify_pci_theorem(const Group& g, const CharTable& t);

}  // namespace qga
