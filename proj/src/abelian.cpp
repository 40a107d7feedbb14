#include "qga/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace qga {

AbelianPType::AbelianPType(Int prime, std::vector<Int> exps) : p(prime), exponents(std::move(exps)) {
    if (!is_prime(p)) fail(Errc::BadSpec, "AbelianPType: p must be prime");
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 1) fail(Errc::BadSpec, "AbelianPType: exponents must be >= 1");
        if (i > 0 && exponents[i - 1] > exponents[i])
            fail(Errc::BadSpec, "AbelianPType: exponents must be nondecreasing");
    }
}

Int AbelianPType::order() const {
    Int s = 0;
    for (Int a : exponents) s += a;
    return ipow(p, s);
}

Int AbelianPType::exponent() const {
    return exponents.empty() ? 1 : ipow(p, exponents.back());
}

std::string AbelianPType::str() const {
    std::ostringstream os;
    if (exponents.empty()) return "1";
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (i) os << " x ";
        os << "C" << ipow(p, exponents[i]);
    }
    return os.str();
}

AbelianPType make_type(Int p, std::vector<Int> exps) {
    std::vector<Int> kept;
    for (Int a : exps) {
        if (a < 0) fail(Errc::BadSpec, "make_type: negative exponent");
        if (a > 0) kept.push_back(a);
    }
    std::sort(kept.begin(), kept.end());
    return AbelianPType(p, std::move(kept));
}

Int counting_h(const AbelianPType& t, Int alpha) {
    // h(alpha) = p^{(k-j)alpha + a_1 + ... + a_{j-1}} for a_{j-1} <= alpha <= a_j,
    // smallest admissible j, with a_0 = 0.
    const Int k = t.rank();
    if (alpha == 0) return 1;
    Int prefix = 0;
    for (Int j = 1; j <= k; ++j) {
        Int lo = (j == 1) ? 0 : t.exponents[j - 2];
        Int hi = t.exponents[j - 1];
        if (lo <= alpha && alpha <= hi) return ipow(t.p, (k - j) * alpha + prefix);
        prefix += t.exponents[j - 1];
    }
    fail(Errc::BadSpec, "counting_h: alpha out of range");
}

Int count_cyclic_subgroups(const AbelianPType& t, Int alpha) {
    if (alpha < 0) fail(Errc::BadSpec, "count_cyclic_subgroups: negative alpha");
    if (alpha == 0) return 1;
    if (t.exponents.empty() || alpha > t.exponents.back()) return 0;
    Int num = t.p * counting_h(t, alpha) - counting_h(t, alpha - 1);
    if (num % (t.p - 1) != 0) fail(Errc::BadSpec, "count_cyclic_subgroups: inexact division");
    return num / (t.p - 1);
}

Int count_elements_of_order(const AbelianPType& t, Int alpha) {
    if (alpha < 0) fail(Errc::BadSpec, "count_elements_of_order: negative alpha");
    if (alpha == 0) return 1;
    // phi(p^alpha) generators per cyclic subgroup of order p^alpha
    Int phi = ipow(t.p, alpha - 1) * (t.p - 1);
    return phi * count_cyclic_subgroups(t, alpha);
}

namespace {

bool is_lone(const std::vector<std::vector<Int>>& a, Int s) {
    const Int m = static_cast<Int>(a.size());
    const Int n = m ? static_cast<Int>(a[0].size()) : 0;
    for (Int i = s + 1; i < m; ++i)
        if (a[i][s] != 0) return false;
    for (Int j = s + 1; j < n; ++j)
        if (a[s][j] != 0) return false;
    return true;
}

void check_entry(Int v) {
    if (v > (Int{1} << 56) || v < -(Int{1} << 56)) fail(Errc::Overflow, "smith: entry overflow");
}

}  // namespace

std::vector<Int> smith_diagonal(RelationMatrix mat) {
    const Int n = mat.cols;
    Int m = static_cast<Int>(mat.rows.size());
    for (auto& r : mat.rows)
        if (static_cast<Int>(r.size()) != n) fail(Errc::BadSpec, "smith: ragged matrix");
    auto& a = mat.rows;
    const Int nmin = std::min(m, n);

    for (Int s = 0; s < nmin; ++s) {
        for (;;) {
            // locate minimal nonzero |entry| in the lower-right block
            Int pr = -1, pc = -1, best = 0;
            for (Int i = s; i < m; ++i)
                for (Int j = s; j < n; ++j)
                    if (a[i][j] != 0 && (pr < 0 || std::abs(a[i][j]) < best)) {
                        best = std::abs(a[i][j]);
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) break;  // block is zero
            std::swap(a[s], a[pr]);
            if (pc != s)
                for (Int i = 0; i < m; ++i) std::swap(a[i][s], a[i][pc]);

            for (Int i = s + 1; i < m; ++i) {
                if (a[i][s] != 0) {
                    Int q = a[i][s] / a[s][s];
                    for (Int j = s; j < n; ++j) {
                        a[i][j] -= q * a[s][j];
                        check_entry(a[i][j]);
                    }
                }
            }
            for (Int j = s + 1; j < n; ++j) {
                if (a[s][j] != 0) {
                    Int q = a[s][j] / a[s][s];
                    for (Int i = s; i < m; ++i) {
                        a[i][j] -= q * a[i][s];
                        check_entry(a[i][j]);
                    }
                }
            }
            if (is_lone(a, s)) {
                // enforce divisibility: fold in any entry the pivot misses
                Int br = -1, bc = -1;
                for (Int i = s + 1; i < m && br < 0; ++i)
                    for (Int j = s + 1; j < n; ++j)
                        if (a[i][j] % a[s][s] != 0) {
                            br = i;
                            bc = j;
                            break;
                        }
                if (br < 0) break;
                for (Int j = 0; j < n; ++j) a[s][j] += a[br][j];
            }
        }
        if (s < m && a[s][s] < 0)
            for (Int j = 0; j < n; ++j) a[s][j] = -a[s][j];
    }

    std::vector<Int> d(static_cast<size_t>(n), 0);
    for (Int s = 0; s < nmin; ++s) d[static_cast<size_t>(s)] = a[s][s];
    return d;
}

AbelianPType smith_invariants(const RelationMatrix& m, Int p) {
    if (!is_prime(p)) fail(Errc::BadSpec, "smith_invariants: p must be prime");
    std::vector<Int> d = smith_diagonal(m);
    std::vector<Int> exps;
    for (Int div : d) {
        if (div == 0) fail(Errc::InfiniteGroup, "smith_invariants: infinite quotient");
        exps.push_back(plog(p, div));  // NotPGroup on foreign prime factors
    }
    return make_type(p, std::move(exps));
}

}  // namespace qga
