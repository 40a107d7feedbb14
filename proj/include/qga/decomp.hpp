#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qga/abelian.hpp"

namespace qga {

/// One simple component: multiplicity copies of M_{matrix_size}(Q(zeta_conductor)).
struct SimpleComponent {
    Int multiplicity = 1;
    Int matrix_size = 1;
    Int conductor = 1;  // 1 means Q

    bool operator==(const SimpleComponent& o) const {
        return multiplicity == o.multiplicity && matrix_size == o.matrix_size &&
               conductor == o.conductor;
    }
};

/// Canonical multiset of simple components, keyed by (matrix_size, conductor)
/// with equal keys merged. Invariant: sum mult*m^2*phi(d) == group_order.
class WeddDecomp {
public:
    WeddDecomp() = default;
    explicit WeddDecomp(Int group_order) : group_order_(group_order) {}

    void add(Int multiplicity, Int matrix_size, Int conductor);
    Int group_order() const { return group_order_; }
    void set_group_order(Int n) { group_order_ = n; }

    /// Components sorted by (matrix_size asc, conductor asc).
    std::vector<SimpleComponent> components() const;

    /// Sum mult * m^2 * phi(d).
    Int dimension() const;

    /// Throws BadSpec when the dimension identity fails.
    void check_dimension() const;

    bool operator==(const WeddDecomp& o) const { return parts_ == o.parts_; }

    /// ASCII rendering, e.g. "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))".
    std::string render() const;

    std::string to_json() const;
    static WeddDecomp from_json(const std::string& text);

private:
    Int group_order_ = 0;
    std::map<std::pair<Int, Int>, Int> parts_;  // (matrix_size, conductor) -> mult
};

/// True iff the canonical component multisets are identical.
bool decomp_equal(const WeddDecomp& a, const WeddDecomp& b);

/// Combinatorial input of the nested-GVZ theorem.
struct GvzLayer {
    Int delta = 1;         // character degree exponent: degree p^delta
    AbelianPType q;        // Z_{delta}/[Z_{delta}, G]
    AbelianPType q_prev;   // Z_{delta}/[Z_{delta-1}, G]
};

struct NestedGVZData {
    Int p = 3;
    AbelianPType abelianization;
    std::vector<GvzLayer> layers;  // delta strictly increasing

    /// Validates all type invariants (odd p, delta increasing, exponent and
    /// order divisibility, p-power total order). Throws BadSpec / NotOddPrime.
    void validate() const;

    /// |G| recovered from the data: |G/G'| + sum (|q|-|q_prev|) p^{2 delta}.
    Int group_order() const;
};

/// Perlis-Walker decomposition of Q(G) for abelian G (any prime p).
WeddDecomp perlis_walker(const AbelianPType& t);

/// Identical to perlis_walker; the decomp-module entry point.
WeddDecomp decompose_abelian(const AbelianPType& t);

/// VZ p-group formula (odd p). center_index_sqrt is |G/Z(G)|^{1/2}.
WeddDecomp decompose_vz(Int p, const AbelianPType& abelianization, const AbelianPType& center,
                        const AbelianPType& center_mod_derived, Int center_index_sqrt);

/// The main nested-GVZ formula.
WeddDecomp decompose_nested_gvz(const NestedGVZData& data);

}  // namespace qga
