#pragma once

#include <vector>

#include "qga/common.hpp"

namespace qga {

/// Isomorphism type of a finite abelian p-group: C_{p^a1} x ... x C_{p^ak}
/// with a1 <= ... <= ak. The trivial group is the empty exponent list.
struct AbelianPType {
    Int p = 2;
    std::vector<Int> exponents;  // nondecreasing, all >= 1

    AbelianPType() = default;
    AbelianPType(Int prime, std::vector<Int> exps);

    Int rank() const { return static_cast<Int>(exponents.size()); }
    Int order() const;
    Int exponent() const;  // 1 for the trivial group
    bool trivial() const { return exponents.empty(); }

    // trivial groups compare equal regardless of the stored prime
    bool operator==(const AbelianPType& o) const {
        return exponents == o.exponents && (exponents.empty() || p == o.p);
    }
    bool operator!=(const AbelianPType& o) const { return !(*this == o); }

    std::string str() const;
};

/// Normalizes an exponent list: drops zeros, sorts ascending. Rejects negatives.
AbelianPType make_type(Int p, std::vector<Int> exps);

/// Number of cyclic subgroups of order p^alpha (Yeh/Toth counting formula).
/// Total extension: 1 at alpha = 0, 0 above the top exponent.
Int count_cyclic_subgroups(const AbelianPType& t, Int alpha);

/// Number of elements of order exactly p^alpha.
Int count_elements_of_order(const AbelianPType& t, Int alpha);

/// The h_p^{k-1} helper of the counting lemma, exposed for the boundary
/// consistency tests. j is chosen as the smallest admissible bracket index.
Int counting_h(const AbelianPType& t, Int alpha);

/// Integer relation matrix: columns index abelian generators, rows are
/// relations (exponent vectors equal to the identity).
struct RelationMatrix {
    Int cols = 0;
    std::vector<std::vector<Int>> rows;  // each of length cols
};

/// Smith normal form diagonal d1 | d2 | ... (nonnegative, zero-padded to the
/// column count). Exact integer arithmetic, pivoting on minimal absolute value.
std::vector<Int> smith_diagonal(RelationMatrix m);

/// Abelian p-type of the finitely presented abelian group. Errors:
/// InfiniteGroup if the quotient is infinite, NotPGroup if a divisor has a
/// prime factor other than p.
AbelianPType smith_invariants(const RelationMatrix& m, Int p);

}  // namespace qga
