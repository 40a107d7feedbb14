#include "qga/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace qga {

Int oracle_bound() {
    if (const char* env = std::getenv("QGA_ORACLE_BOUND")) {
        Int v = std::atoll(env);
        if (v > 0) return v;
    }
    return 4000;
}

// ---------------------------------------------------------------------------
// modular linear algebra for the Dixon-Burnside eigensplit
// ---------------------------------------------------------------------------

namespace {

using ModVec = std::vector<Int>;
using ModMat = std::vector<ModVec>;  // row-major

struct Subspace {
    std::vector<ModVec> basis;  // columns, reduced column echelon
    std::vector<Int> pivots;    // pivot row per column; basis[j][pivots[i]] == (i==j)
};

// reduced column echelon form of the given columns (mod q); drops zero columns
Subspace echelonize(std::vector<ModVec> cols, Int q) {
    Subspace s;
    for (auto& col : cols) {
        for (size_t attempt = 0; attempt < s.basis.size(); ++attempt) {
            Int c = col[static_cast<size_t>(s.pivots[attempt])];
            if (c != 0)
                for (size_t r = 0; r < col.size(); ++r)
                    col[r] = ((col[r] - c * s.basis[attempt][r]) % q + q) % q;
        }
        Int piv = -1;
        for (size_t r = 0; r < col.size(); ++r)
            if (col[r] != 0) {
                piv = static_cast<Int>(r);
                break;
            }
        if (piv < 0) continue;
        Int inv = mod_inv(col[static_cast<size_t>(piv)], q);
        for (auto& v : col) v = v * inv % q;
        // clear the new pivot row from existing basis columns
        for (size_t b = 0; b < s.basis.size(); ++b) {
            Int c = s.basis[b][static_cast<size_t>(piv)];
            if (c != 0)
                for (size_t r = 0; r < col.size(); ++r)
                    s.basis[b][r] = ((s.basis[b][r] - c * col[r]) % q + q) % q;
        }
        s.basis.push_back(std::move(col));
        s.pivots.push_back(piv);
    }
    return s;
}

ModVec mat_vec(const ModMat& m, const ModVec& v, Int q) {
    ModVec out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        Int acc = 0;
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0 && m[i][j] != 0) acc = (acc + m[i][j] * v[j]) % q;
        out[i] = acc;
    }
    return out;
}

// characteristic polynomial mod q via Hessenberg reduction; little-endian
std::vector<Int> charpoly_modq(ModMat h, Int q) {
    const Int d = static_cast<Int>(h.size());
    for (Int col = 0; col + 2 < d; ++col) {
        Int piv = -1;
        for (Int r = col + 1; r < d; ++r)
            if (h[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != col + 1) {
            std::swap(h[static_cast<size_t>(piv)], h[static_cast<size_t>(col + 1)]);
            for (Int r = 0; r < d; ++r)
                std::swap(h[static_cast<size_t>(r)][static_cast<size_t>(piv)],
                          h[static_cast<size_t>(r)][static_cast<size_t>(col + 1)]);
        }
        Int inv = mod_inv(h[static_cast<size_t>(col + 1)][static_cast<size_t>(col)], q);
        for (Int r = col + 2; r < d; ++r) {
            Int f = h[static_cast<size_t>(r)][static_cast<size_t>(col)] * inv % q;
            if (f == 0) continue;
            for (Int j = 0; j < d; ++j)
                h[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                    ((h[static_cast<size_t>(r)][static_cast<size_t>(j)] -
                      f * h[static_cast<size_t>(col + 1)][static_cast<size_t>(j)]) %
                         q +
                     q) %
                    q;
            for (Int i = 0; i < d; ++i)
                h[static_cast<size_t>(i)][static_cast<size_t>(col + 1)] =
                    (h[static_cast<size_t>(i)][static_cast<size_t>(col + 1)] +
                     f * h[static_cast<size_t>(i)][static_cast<size_t>(r)]) %
                    q;
        }
    }
    // p_m(x) = (x - h[m-1][m-1]) p_{m-1}(x) - sum_i h[i-1][m-1] (prod subdiag) p_{i-1}(x)
    std::vector<std::vector<Int>> p(static_cast<size_t>(d + 1));
    p[0] = {1};
    for (Int m = 1; m <= d; ++m) {
        const auto& prev = p[static_cast<size_t>(m - 1)];
        std::vector<Int> cur(static_cast<size_t>(m + 1), 0);
        Int diag = h[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 1)];
        for (size_t j = 0; j < prev.size(); ++j) {
            cur[j + 1] = (cur[j + 1] + prev[j]) % q;
            cur[j] = ((cur[j] - diag * prev[j]) % q + q) % q;
        }
        Int run = 1;
        for (Int i = m - 1; i >= 1; --i) {
            run = run * h[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] % q;
            if (run == 0) break;
            Int coeff = h[static_cast<size_t>(i - 1)][static_cast<size_t>(m - 1)] * run % q;
            if (coeff == 0) continue;
            const auto& pi = p[static_cast<size_t>(i - 1)];
            for (size_t j = 0; j < pi.size(); ++j)
                cur[j] = ((cur[j] - coeff * pi[j]) % q + q) % q;
        }
        p[static_cast<size_t>(m)] = std::move(cur);
    }
    return p[static_cast<size_t>(d)];
}

std::vector<Int> poly_roots_modq(const std::vector<Int>& poly, Int q) {
    std::vector<Int> roots;
    for (Int x = 0; x < q; ++x) {
        Int acc = 0;
        for (size_t j = poly.size(); j-- > 0;) acc = (acc * x + poly[j]) % q;
        if (acc == 0) roots.push_back(x);
    }
    return roots;
}

// nullspace basis of (m - lambda I) mod q
std::vector<ModVec> eigen_nullspace(ModMat m, Int lambda, Int q) {
    const Int d = static_cast<Int>(m.size());
    for (Int i = 0; i < d; ++i)
        m[static_cast<size_t>(i)][static_cast<size_t>(i)] =
            ((m[static_cast<size_t>(i)][static_cast<size_t>(i)] - lambda) % q + q) % q;
    // row echelon with column pivots
    std::vector<Int> pivot_col_of_row;
    Int row = 0;
    std::vector<Int> pivot_row_of_col(static_cast<size_t>(d), -1);
    for (Int col = 0; col < d && row < d; ++col) {
        Int pr = -1;
        for (Int r = row; r < d; ++r)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[static_cast<size_t>(pr)], m[static_cast<size_t>(row)]);
        Int inv = mod_inv(m[static_cast<size_t>(row)][static_cast<size_t>(col)], q);
        for (Int j = 0; j < d; ++j)
            m[static_cast<size_t>(row)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(row)][static_cast<size_t>(j)] * inv % q;
        for (Int r = 0; r < d; ++r) {
            if (r == row) continue;
            Int f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (Int j = 0; j < d; ++j)
                m[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                    ((m[static_cast<size_t>(r)][static_cast<size_t>(j)] -
                      f * m[static_cast<size_t>(row)][static_cast<size_t>(j)]) %
                         q +
                     q) %
                    q;
        }
        pivot_row_of_col[static_cast<size_t>(col)] = row;
        pivot_col_of_row.push_back(col);
        ++row;
    }
    std::vector<ModVec> basis;
    for (Int col = 0; col < d; ++col) {
        if (pivot_row_of_col[static_cast<size_t>(col)] >= 0) continue;
        ModVec v(static_cast<size_t>(d), 0);
        v[static_cast<size_t>(col)] = 1;
        for (Int c2 = 0; c2 < d; ++c2) {
            Int pr = pivot_row_of_col[static_cast<size_t>(c2)];
            if (pr < 0) continue;
            Int val = m[static_cast<size_t>(pr)][static_cast<size_t>(col)];
            if (val != 0) v[static_cast<size_t>(c2)] = (q - val) % q;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// F[t] = sum_s f[s] root^{st} mod q; |f| = multiplicative order of root.
std::vector<Int> dft_modq(const std::vector<Int>& f, Int root, Int q) {
    const Int o = static_cast<Int>(f.size());
    if (o == 1) return f;
    Int r = 2;
    while (o % r != 0) ++r;
    const Int m = o / r;
    std::vector<std::vector<Int>> sub(static_cast<size_t>(r));
    for (Int j = 0; j < r; ++j) {
        std::vector<Int> fj(static_cast<size_t>(m));
        for (Int s = 0; s < m; ++s) fj[static_cast<size_t>(s)] = f[static_cast<size_t>(s * r + j)];
        sub[static_cast<size_t>(j)] = dft_modq(fj, mod_pow(root, r, q), q);
    }
    std::vector<Int> rootpow(static_cast<size_t>(o));
    rootpow[0] = 1;
    for (Int i = 1; i < o; ++i) rootpow[static_cast<size_t>(i)] = rootpow[static_cast<size_t>(i - 1)] * root % q;
    std::vector<Int> out(static_cast<size_t>(o), 0);
    for (Int t = 0; t < o; ++t) {
        Int acc = 0;
        for (Int j = 0; j < r; ++j)
            acc = (acc + rootpow[static_cast<size_t>(j * t % o)] * sub[static_cast<size_t>(j)][static_cast<size_t>(t % m)]) % q;
        out[static_cast<size_t>(t)] = acc;
    }
    return out;
}

Int primitive_root_modq(Int q) {
    std::vector<Int> prime_factors;
    Int n = q - 1;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) prime_factors.push_back(n);
    for (Int g = 2; g < q; ++g) {
        bool ok = true;
        for (Int f : prime_factors)
            if (mod_pow(g, (q - 1) / f, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    fail(Errc::LiftFailure, "no primitive root");
}

// ---------------------------------------------------------------------------
// exact table verification, shared by both construction paths
// ---------------------------------------------------------------------------

void verify_table(const CharTable& t, Errc on_failure) {
    const Int c = t.classes.count();
    const Int n = t.group.size();
    const Int e = t.exponent;
    if (t.char_count() != c)
        fail(on_failure, t.group.name() + ": character count " + std::to_string(t.char_count()) +
                             " != class count " + std::to_string(c));
    Int degsum = 0;
    for (Int d : t.degrees) degsum += d * d;
    if (degsum != n) fail(on_failure, t.group.name() + ": sum of squared degrees != |G|");
    for (Int i = 0; i < c; ++i) {
        CycInt idval = t.canonical_value(i, t.identity_class);
        if (idval != CycInt::constant(t.ctx, t.degrees[static_cast<size_t>(i)]))
            fail(on_failure, "value at identity is not the degree");
    }
    std::vector<Int> acc(static_cast<size_t>(e));
    // first orthogonality: sum_k |C_k| chi(g_k) conj(psi(g_k)) = delta |G|
    for (Int i = 0; i < c; ++i) {
        for (Int j = i; j < c; ++j) {
            std::fill(acc.begin(), acc.end(), 0);
            for (Int k = 0; k < c; ++k) {
                const ZetaSum& a = t.value(i, k);
                if (a.terms.empty()) continue;
                const ZetaSum& b = t.value(j, k);
                if (b.terms.empty()) continue;
                Int w = t.classes.sizes[static_cast<size_t>(k)];
                for (const auto& [t1, c1] : a.terms)
                    for (const auto& [t2, c2] : b.terms)
                        acc[static_cast<size_t>(((t1 - t2) % e + e) % e)] += w * c1 * c2;
            }
            CycInt got = reduce_dense(t.ctx, acc);
            CycInt expect = CycInt::constant(t.ctx, i == j ? n : 0);
            if (got != expect)
                fail(on_failure, t.group.name() + ": first orthogonality fails at characters " +
                                     std::to_string(i) + "," + std::to_string(j));
        }
    }
    // second orthogonality: sum_chi chi(g_j) conj(chi(g_k)) = delta |G|/|C_j|
    for (Int j = 0; j < c; ++j) {
        for (Int k = j; k < c; ++k) {
            std::fill(acc.begin(), acc.end(), 0);
            for (Int i = 0; i < c; ++i) {
                const ZetaSum& a = t.value(i, j);
                if (a.terms.empty()) continue;
                const ZetaSum& b = t.value(i, k);
                if (b.terms.empty()) continue;
                for (const auto& [t1, c1] : a.terms)
                    for (const auto& [t2, c2] : b.terms)
                        acc[static_cast<size_t>(((t1 - t2) % e + e) % e)] += c1 * c2;
            }
            CycInt got = reduce_dense(t.ctx, acc);
            Int expect_val = j == k ? n / t.classes.sizes[static_cast<size_t>(j)] : 0;
            if (got != CycInt::constant(t.ctx, expect_val))
                fail(on_failure, t.group.name() + ": second orthogonality fails at classes " +
                                     std::to_string(j) + "," + std::to_string(k));
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Dixon-Burnside character table
// ---------------------------------------------------------------------------

CharTable character_table(const Group& g, std::optional<Int> bound) {
    const Int n = g.size();
    const Int cap = bound.value_or(oracle_bound());
    if (n > cap)
        fail(Errc::BoundExceeded, g.name() + ": order " + std::to_string(n) +
                                      " exceeds oracle bound " + std::to_string(cap));
    CharTable t;
    t.group = g;
    t.classes = conjugacy_classes(g);
    const Int c = t.classes.count();
    t.identity_class = t.classes.class_of[static_cast<size_t>(g.identity())];
    t.exponent = g.exponent();
    const Int e = t.exponent;
    t.ctx = CyclotomicContext::get(e);

    // smallest prime q = 1 mod e with q > 2 ceil(sqrt |G|)
    Int root_ceil = 1;
    while (root_ceil * root_ceil < n) ++root_ceil;
    Int q = e + 1;
    while (q <= 2 * root_ceil || !is_prime(q)) q += e;

    std::vector<std::vector<Int>> members(static_cast<size_t>(c));
    for (Int x = 0; x < n; ++x)
        members[static_cast<size_t>(t.classes.class_of[static_cast<size_t>(x)])].push_back(x);

    auto class_matrix = [&](Int i) {
        ModMat m(static_cast<size_t>(c), ModVec(static_cast<size_t>(c), 0));
        for (Int k = 0; k < c; ++k) {
            Int zk = t.classes.reps[static_cast<size_t>(k)];
            for (Int x : members[static_cast<size_t>(i)]) {
                Int y = g.mult(g.inv(x), zk);
                ++m[static_cast<size_t>(t.classes.class_of[static_cast<size_t>(y)])][static_cast<size_t>(k)];
            }
        }
        for (auto& row : m)
            for (auto& v : row) v %= q;
        return m;
    };

    // split the class algebra into common eigenlines
    std::vector<Subspace> spaces;
    {
        std::vector<ModVec> eye;
        for (Int i = 0; i < c; ++i) {
            ModVec v(static_cast<size_t>(c), 0);
            v[static_cast<size_t>(i)] = 1;
            eye.push_back(std::move(v));
        }
        spaces.push_back(echelonize(std::move(eye), q));
    }
    std::vector<Int> class_order(static_cast<size_t>(c));
    for (Int i = 0; i < c; ++i) class_order[static_cast<size_t>(i)] = i;
    std::sort(class_order.begin(), class_order.end(), [&](Int a, Int b) {
        return t.classes.sizes[static_cast<size_t>(a)] < t.classes.sizes[static_cast<size_t>(b)];
    });

    for (Int oi : class_order) {
        if (oi == t.identity_class) continue;
        bool all_split = true;
        for (const auto& s : spaces)
            if (s.basis.size() > 1) all_split = false;
        if (all_split) break;
        ModMat m = class_matrix(oi);
        std::vector<Subspace> next;
        for (auto& s : spaces) {
            const Int dim = static_cast<Int>(s.basis.size());
            if (dim <= 1) {
                next.push_back(std::move(s));
                continue;
            }
            // restriction R of M to the subspace: columns of M*B in basis coords
            std::vector<ModVec> mb(static_cast<size_t>(dim));
            for (Int j = 0; j < dim; ++j) mb[static_cast<size_t>(j)] = mat_vec(m, s.basis[static_cast<size_t>(j)], q);
            ModMat r(static_cast<size_t>(dim), ModVec(static_cast<size_t>(dim), 0));
            for (Int j = 0; j < dim; ++j)
                for (Int i = 0; i < dim; ++i)
                    r[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        mb[static_cast<size_t>(j)][static_cast<size_t>(s.pivots[static_cast<size_t>(i)])];
            // invariance sanity: M b_j must reconstruct from the coefficients
            for (Int j = 0; j < dim; ++j) {
                ModVec rec(static_cast<size_t>(c), 0);
                for (Int i = 0; i < dim; ++i) {
                    Int f = r[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    if (f == 0) continue;
                    for (Int row2 = 0; row2 < c; ++row2)
                        rec[static_cast<size_t>(row2)] =
                            (rec[static_cast<size_t>(row2)] +
                             f * s.basis[static_cast<size_t>(i)][static_cast<size_t>(row2)]) %
                            q;
                }
                if (rec != mb[static_cast<size_t>(j)])
                    fail(Errc::LiftFailure, "class algebra subspace is not invariant");
            }
            std::vector<Int> roots = poly_roots_modq(charpoly_modq(r, q), q);
            for (Int lambda : roots) {
                std::vector<ModVec> null_b = eigen_nullspace(r, lambda, q);
                if (null_b.empty()) continue;
                std::vector<ModVec> cols;
                for (const auto& nb : null_b) {
                    ModVec col(static_cast<size_t>(c), 0);
                    for (Int i = 0; i < dim; ++i) {
                        if (nb[static_cast<size_t>(i)] == 0) continue;
                        for (Int row2 = 0; row2 < c; ++row2)
                            col[static_cast<size_t>(row2)] =
                                (col[static_cast<size_t>(row2)] + nb[static_cast<size_t>(i)] *
                                                                      s.basis[static_cast<size_t>(i)][static_cast<size_t>(row2)]) %
                                q;
                    }
                    cols.push_back(std::move(col));
                }
                next.push_back(echelonize(std::move(cols), q));
            }
        }
        spaces = std::move(next);
    }
    for (const auto& s : spaces)
        if (s.basis.size() != 1) fail(Errc::LiftFailure, "class algebra did not split into lines");
    if (static_cast<Int>(spaces.size()) != c) fail(Errc::LiftFailure, "eigenline count mismatch");

    // central characters omega, then degrees and value lifts
    Int root_q = primitive_root_modq(q);
    Int z = mod_pow(root_q, (q - 1) / e, q);  // fixed primitive e-th root mod q
    std::vector<Int> zlog(static_cast<size_t>(q), -1);
    {
        Int v = 1;
        for (Int j = 0; j < e; ++j) {
            zlog[static_cast<size_t>(v)] = j;
            v = v * z % q;
        }
    }
    // power classes: class index of rep^s, shared across characters
    std::vector<std::vector<Int>> power_class(static_cast<size_t>(c));
    std::vector<Int> rep_order(static_cast<size_t>(c));
    for (Int k = 0; k < c; ++k) {
        Int rep = t.classes.reps[static_cast<size_t>(k)];
        Int o = g.order_of(rep);
        rep_order[static_cast<size_t>(k)] = o;
        std::vector<Int>& pc = power_class[static_cast<size_t>(k)];
        Int x = g.identity();
        for (Int s = 0; s < o; ++s) {
            pc.push_back(t.classes.class_of[static_cast<size_t>(x)]);
            x = g.mult(x, rep);
        }
    }

    for (const auto& s : spaces) {
        ModVec v = s.basis[0];
        Int vid = v[static_cast<size_t>(t.identity_class)];
        if (vid == 0) fail(Errc::LiftFailure, "central character vanishes at identity");
        Int norm = mod_inv(vid, q);
        for (auto& x : v) x = x * norm % q;
        // degree from the first orthogonality relation
        Int ssum = 0;
        for (Int k = 0; k < c; ++k) {
            Int istar = t.classes.inverse_class[static_cast<size_t>(k)];
            Int term = v[static_cast<size_t>(k)] * v[static_cast<size_t>(istar)] % q *
                       mod_inv(t.classes.sizes[static_cast<size_t>(k)] % q, q) % q;
            ssum = (ssum + term) % q;
        }
        if (ssum == 0) fail(Errc::LiftFailure, "degree norm vanished");
        Int degsq = n % q * mod_inv(ssum, q) % q;
        Int degree = -1;
        for (Int d = 1; d * d <= n; ++d)
            if (d * d % q == degsq) {
                if (degree > 0) fail(Errc::LiftFailure, "ambiguous degree");
                degree = d;
            }
        if (degree < 0) fail(Errc::LiftFailure, "no degree matches");

        std::vector<Int> chi_mod(static_cast<size_t>(c));
        for (Int k = 0; k < c; ++k)
            chi_mod[static_cast<size_t>(k)] =
                degree % q * v[static_cast<size_t>(k)] % q *
                mod_inv(t.classes.sizes[static_cast<size_t>(k)] % q, q) % q;

        std::vector<ZetaSum> row(static_cast<size_t>(c));
        for (Int k = 0; k < c; ++k) {
            Int o = rep_order[static_cast<size_t>(k)];
            ZetaSum val;
            if (degree == 1) {
                Int lg = zlog[static_cast<size_t>(chi_mod[static_cast<size_t>(k)])];
                if (lg < 0) fail(Errc::LiftFailure, "linear value is not a root of unity");
                if (lg % (e / o) != 0)
                    fail(Errc::LiftFailure, "linear value order exceeds element order");
                val = ZetaSum::root(lg, 1);
            } else {
                std::vector<Int> f(static_cast<size_t>(o));
                for (Int sx = 0; sx < o; ++sx)
                    f[static_cast<size_t>(sx)] =
                        chi_mod[static_cast<size_t>(power_class[static_cast<size_t>(k)][static_cast<size_t>(sx)])];
                Int zo_inv = mod_inv(mod_pow(z, e / o, q), q);
                std::vector<Int> mults = dft_modq(f, zo_inv, q);
                Int oinv = mod_inv(o % q, q);
                Int total = 0;
                for (Int tt = 0; tt < o; ++tt) {
                    Int mt = mults[static_cast<size_t>(tt)] * oinv % q;
                    if (mt == 0) continue;
                    if (mt > degree) fail(Errc::LiftFailure, "eigenvalue multiplicity out of range");
                    total += mt;
                    val.terms.push_back({tt * (e / o), mt});
                }
                if (total != degree) fail(Errc::LiftFailure, "eigenvalue multiplicities do not sum to degree");
                zeta_normalize(val, e);
            }
            row[static_cast<size_t>(k)] = std::move(val);
        }
        t.degrees.push_back(degree);
        t.values.push_back(std::move(row));
    }

    verify_table(t, Errc::LiftFailure);
    return t;
}

// ---------------------------------------------------------------------------
// GVZ fast path
// ---------------------------------------------------------------------------

namespace {

// linear character values of an abelian quotient, rebased to zeta_e exponents
struct QuotientChars {
    QuotientGroup q;
    CharTable table;
    Int rebase = 1;  // multiply quotient exponents by this to land in zeta_e
};

QuotientChars quotient_chars(const Group& g, const Subgroup& h, const Subgroup& nsub, Int e) {
    QuotientChars out;
    out.q = quotient_group(g, h, nsub);
    out.table = character_table(out.q.group, out.q.group.size());
    for (Int d : out.table.degrees)
        if (d != 1) fail(Errc::SectionMismatch, "witness quotient is not abelian");
    Int eq = out.table.exponent;
    if (e % eq != 0) fail(Errc::SectionMismatch, "quotient exponent does not divide exp(G)");
    out.rebase = e / eq;
    return out;
}

// value of quotient character mu at a parent element x in H
ZetaSum quotient_value(const QuotientChars& qc, Int mu, Int x) {
    Int qidx = qc.q.coset_of[static_cast<size_t>(x)];
    Int cls = qc.table.classes.class_of[static_cast<size_t>(qidx)];
    ZetaSum v = qc.table.value(mu, cls);
    for (auto& [t, c] : v.terms) t *= qc.rebase;
    return v;
}

}  // namespace

CharTable gvz_fast_table(const Group& g, const GvzWitness& witness) {
    CharTable t;
    t.group = g;
    t.classes = conjugacy_classes(g);
    const Int c = t.classes.count();
    t.identity_class = t.classes.class_of[static_cast<size_t>(g.identity())];
    t.exponent = g.exponent();
    const Int e = t.exponent;
    t.ctx = CyclotomicContext::get(e);
    const Int p = [&] {
        Int n = g.size();
        for (Int d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }();

    Subgroup whole = whole_group(g);
    Subgroup derived = derived_subgroup(g);

    // linear characters: lifts of Irr(G/G')
    {
        QuotientChars lin = quotient_chars(g, whole, derived, e);
        for (Int mu = 0; mu < lin.table.char_count(); ++mu) {
            std::vector<ZetaSum> row(static_cast<size_t>(c));
            for (Int k = 0; k < c; ++k)
                row[static_cast<size_t>(k)] = quotient_value(lin, mu, t.classes.reps[static_cast<size_t>(k)]);
            t.degrees.push_back(1);
            t.values.push_back(std::move(row));
        }
    }

    // nonlinear layers: chi_mu = p^delta mu on Z_delta, zero outside
    Subgroup k_prev = derived;
    for (const auto& layer : witness.layers) {
        Subgroup zsub = subgroup_generated(g, layer.z_gens);
        Subgroup ksub = subgroup_generated(g, layer.k_gens);
        if (!is_subgroup_normal(g, zsub) || !is_subgroup_normal(g, ksub))
            fail(Errc::NotNormal, "witness subgroup is not normal");
        for (Int x : ksub.elements)
            if (!zsub.contains(x)) fail(Errc::SectionMismatch, "[Z,G] witness not inside Z");
        for (Int x : k_prev.elements)
            if (!zsub.contains(x))
                fail(Errc::SectionMismatch, "[Z_{r-1},G] witness does not sit inside Z_r");
        QuotientChars qc = quotient_chars(g, zsub, ksub, e);
        Int deg = ipow(p, layer.delta);
        for (Int mu = 0; mu < qc.table.char_count(); ++mu) {
            // keep characters lying over the section: nontrivial on K_{r-1}
            bool over_section = false;
            for (Int x : k_prev.elements) {
                ZetaSum v = quotient_value(qc, mu, x);
                if (!(v.terms.size() == 1 && v.terms[0] == std::pair<Int, Int>{0, 1}))
                    over_section = true;
                if (over_section) break;
            }
            if (!over_section) continue;
            std::vector<ZetaSum> row(static_cast<size_t>(c));
            for (Int k = 0; k < c; ++k) {
                Int rep = t.classes.reps[static_cast<size_t>(k)];
                if (zsub.contains(rep)) row[static_cast<size_t>(k)] = zeta_scale(quotient_value(qc, mu, rep), deg);
            }
            t.degrees.push_back(deg);
            t.values.push_back(std::move(row));
        }
        k_prev = ksub;
    }

    verify_table(t, Errc::SectionMismatch);
    return t;
}

// ---------------------------------------------------------------------------
// per-character structure
// ---------------------------------------------------------------------------

namespace {

Subgroup classes_union_subgroup(const CharTable& t, const std::vector<char>& keep) {
    std::vector<Int> elements;
    const Int n = t.group.size();
    for (Int x = 0; x < n; ++x)
        if (keep[static_cast<size_t>(t.classes.class_of[static_cast<size_t>(x)])]) elements.push_back(x);
    std::sort(elements.begin(), elements.end());
    Subgroup s{t.group.impl(), elements, elements};
    // closure sanity on small sets
    if (s.order() <= 512) {
        for (Int x : s.elements)
            for (Int y : s.elements)
                if (!s.contains(t.group.mult(x, y)))
                    fail(Errc::CriterionMismatch, "character class union is not a subgroup");
    }
    return s;
}

}  // namespace

Subgroup char_center(const CharTable& t, Int chi) {
    const Int c = t.classes.count();
    const Int e = t.exponent;
    Int deg = t.degrees[static_cast<size_t>(chi)];
    CycInt degsq = CycInt::constant(t.ctx, deg * deg);
    std::vector<char> keep(static_cast<size_t>(c), 0);
    for (Int k = 0; k < c; ++k) {
        const ZetaSum& v = t.value(chi, k);
        ZetaSum norm = zeta_mult(v, zeta_conj(v, e), e);
        if (zeta_canonical(t.ctx, norm) == degsq) keep[static_cast<size_t>(k)] = 1;
    }
    return classes_union_subgroup(t, keep);
}

Subgroup char_kernel(const CharTable& t, Int chi) {
    const Int c = t.classes.count();
    Int deg = t.degrees[static_cast<size_t>(chi)];
    CycInt degk = CycInt::constant(t.ctx, deg);
    std::vector<char> keep(static_cast<size_t>(c), 0);
    for (Int k = 0; k < c; ++k)
        if (zeta_canonical(t.ctx, t.value(chi, k)) == degk) keep[static_cast<size_t>(k)] = 1;
    return classes_union_subgroup(t, keep);
}

bool is_central_type(const CharTable& t, Int chi) {
    const Int c = t.classes.count();
    const Int e = t.exponent;
    Int deg = t.degrees[static_cast<size_t>(chi)];
    CycInt degsq = CycInt::constant(t.ctx, deg * deg);
    CycInt zero(t.ctx);
    Int center_order = 0;
    bool vanishing = true;
    for (Int k = 0; k < c; ++k) {
        const ZetaSum& v = t.value(chi, k);
        ZetaSum norm = zeta_mult(v, zeta_conj(v, e), e);
        if (zeta_canonical(t.ctx, norm) == degsq)
            center_order += t.classes.sizes[static_cast<size_t>(k)];
        else if (zeta_canonical(t.ctx, v) != zero)
            vanishing = false;
    }
    bool degree_test = deg * deg * center_order == t.group.size();
    if (vanishing != degree_test)
        fail(Errc::CriterionMismatch, "central-type tests disagree on character " + std::to_string(chi));
    return vanishing;
}

bool is_gvz(const CharTable& t) {
    for (Int chi = 0; chi < t.char_count(); ++chi)
        if (!is_central_type(t, chi)) return false;
    return true;
}

bool is_nested_gvz(const CharTable& t) {
    if (!is_gvz(t)) return false;
    std::vector<std::vector<Int>> centers;
    for (Int chi = 0; chi < t.char_count(); ++chi) {
        Subgroup z = char_center(t, chi);
        if (std::find(centers.begin(), centers.end(), z.elements) == centers.end())
            centers.push_back(z.elements);
    }
    std::sort(centers.begin(), centers.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (size_t i = 0; i + 1 < centers.size(); ++i) {
        if (centers[i].size() == centers[i + 1].size()) return false;  // distinct, same size
        if (!std::includes(centers[i + 1].begin(), centers[i + 1].end(), centers[i].begin(),
                           centers[i].end()))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Galois classes, conductors, rational decomposition
// ---------------------------------------------------------------------------

namespace {

std::size_t row_hash(const std::vector<ZetaSum>& row) {
    std::size_t h = 1469598103934665603ull;
    for (const auto& v : row) h = v.hash(h ^ 0x2545f4914f6cdd1dull);
    return h;
}

std::vector<Int> units_mod(Int e) {
    std::vector<Int> u;
    for (Int t = 1; t < e; ++t)
        if (gcd_int(t, e) == 1) u.push_back(t);
    if (e == 1) u.push_back(0);  // trivial group of units
    return u;
}

std::vector<ZetaSum> galois_row(const CharTable& t, Int chi, Int s) {
    std::vector<ZetaSum> row;
    row.reserve(static_cast<size_t>(t.classes.count()));
    for (Int k = 0; k < t.classes.count(); ++k) row.push_back(zeta_galois(t.value(chi, k), s, t.exponent));
    return row;
}

}  // namespace

GaloisClasses galois_classes(const CharTable& t) {
    const Int nchi = t.char_count();
    std::unordered_map<std::size_t, std::vector<Int>> by_hash;
    for (Int i = 0; i < nchi; ++i) by_hash[row_hash(t.values[static_cast<size_t>(i)])].push_back(i);
    auto find_char = [&](const std::vector<ZetaSum>& row) -> Int {
        auto it = by_hash.find(row_hash(row));
        if (it == by_hash.end()) fail(Errc::LiftFailure, "Galois image missing from table");
        for (Int cand : it->second)
            if (t.values[static_cast<size_t>(cand)] == row) return cand;
        fail(Errc::LiftFailure, "Galois image missing from table (hash collision)");
    };
    GaloisClasses out;
    out.class_of.assign(static_cast<size_t>(nchi), -1);
    std::vector<Int> units = units_mod(t.exponent);
    for (Int i = 0; i < nchi; ++i) {
        if (out.class_of[static_cast<size_t>(i)] >= 0) continue;
        Int id = static_cast<Int>(out.classes.size());
        std::vector<Int> orbit;
        for (Int s : units) {
            Int j = find_char(galois_row(t, i, s));
            if (out.class_of[static_cast<size_t>(j)] < 0) {
                out.class_of[static_cast<size_t>(j)] = id;
                orbit.push_back(j);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.classes.push_back(std::move(orbit));
    }
    return out;
}

Int field_degree(const CharTable& t, Int chi) {
    std::vector<Int> units = units_mod(t.exponent);
    Int stab = 0;
    for (Int s : units)
        if (galois_row(t, chi, s) == t.values[static_cast<size_t>(chi)]) ++stab;
    return static_cast<Int>(units.size()) / stab;
}

Int field_conductor(const CharTable& t, Int chi) {
    const Int e = t.exponent;
    std::vector<char> stab(static_cast<size_t>(std::max<Int>(e, 1)), 0);
    for (Int s : units_mod(e))
        if (galois_row(t, chi, s) == t.values[static_cast<size_t>(chi)]) stab[static_cast<size_t>(s % std::max<Int>(e, 1))] = 1;
    for (Int d = 1; d <= e; ++d) {
        if (e % d != 0) continue;
        bool fixed = true;
        for (Int s = 1; s < e && fixed; ++s)
            if (s % d == 1 % d && gcd_int(s, e) == 1 && !stab[static_cast<size_t>(s)]) fixed = false;
        if (e == 1) fixed = true;
        if (fixed) return d;
    }
    fail(Errc::LiftFailure, "no conductor found");
}

WeddDecomp rational_decomposition(const CharTable& t) {
    const Int n = t.group.size();
    Int p = 0;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = n;
    if (n == 1) p = 3;  // trivial group: vacuously fine
    if (p == 2 && n > 1) fail(Errc::NotOddPGroup, "rational_decomposition: p = 2");
    {
        Int m = n;
        while (m > 1) {
            if (m % p != 0) fail(Errc::NotOddPGroup, "rational_decomposition: mixed order");
            m /= p;
        }
    }
    GaloisClasses gc = galois_classes(t);
    WeddDecomp out(n);
    for (const auto& orbit : gc.classes) {
        Int chi = orbit.front();
        Int d = field_conductor(t, chi);
        if (static_cast<Int>(orbit.size()) != euler_phi(d))
            fail(Errc::CriterionMismatch,
                 "Galois class size != phi(conductor); character field is not cyclotomic");
        out.add(1, t.degrees[static_cast<size_t>(chi)], d);
    }
    out.check_dimension();
    return out;
}

WeddDecomp rational_decomposition(const Group& g, std::optional<Int> bound) {
    return rational_decomposition(character_table(g, bound));
}

// ---------------------------------------------------------------------------
// group algebra and idempotents
// ---------------------------------------------------------------------------

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r(group_);
    const Int n = group_.size();
    for (Int h = 0; h < n; ++h) {
        if (coeffs_[static_cast<size_t>(h)] == 0) continue;
        for (Int k = 0; k < n; ++k) {
            if (o.coeffs_[static_cast<size_t>(k)] == 0) continue;
            r.coeffs_[static_cast<size_t>(group_.mult(h, k))] +=
                coeffs_[static_cast<size_t>(h)] * o.coeffs_[static_cast<size_t>(k)];
        }
    }
    return r;
}

bool GroupAlgebraElement::is_zero() const {
    for (const auto& v : coeffs_)
        if (v != 0) return false;
    return true;
}

bool GroupAlgebraElement::is_central() const {
    const Int n = group_.size();
    for (Int s : group_.generators()) {
        Int sinv = group_.inv(s);
        for (Int x = 0; x < n; ++x) {
            // (e s)(g) = e(g s^-1), (s e)(g) = e(s^-1 g)
            if (coeffs_[static_cast<size_t>(group_.mult(x, sinv))] !=
                coeffs_[static_cast<size_t>(group_.mult(sinv, x))])
                return false;
        }
    }
    return true;
}

GroupAlgebraElement algebra_one(const Group& g) {
    GroupAlgebraElement e(g);
    e[static_cast<size_t>(g.identity())] = 1;
    return e;
}

GroupAlgebraElement subgroup_hat(const Group& g, const Subgroup& s) {
    GroupAlgebraElement e(g);
    Rational w(1, s.order());
    for (Int x : s.elements) e[static_cast<size_t>(x)] = w;
    return e;
}

CycIdempotent idempotent_e(const CharTable& t, Int chi) {
    const Group& g = t.group;
    const Int n = g.size();
    const Int e = t.exponent;
    CycIdempotent out;
    out.group = g;
    out.scale = Rational(t.degrees[static_cast<size_t>(chi)], n);
    out.values.resize(static_cast<size_t>(n));
    for (Int x = 0; x < n; ++x)
        out.values[static_cast<size_t>(x)] =
            t.value(chi, t.classes.class_of[static_cast<size_t>(g.inv(x))]);
    // idempotency: chi(1) * sum_h chi(h^-1) chi((h^-1 g)^-1 ... ) folded as
    // chi(1) * conv == |G| * value, all in integer cyclotomics
    std::vector<std::vector<Int>> acc(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(e), 0));
    for (Int h = 0; h < n; ++h) {
        const ZetaSum& vh = out.values[static_cast<size_t>(h)];
        if (vh.terms.empty()) continue;
        for (Int k = 0; k < n; ++k) {
            const ZetaSum& vk = out.values[static_cast<size_t>(k)];
            if (vk.terms.empty()) continue;
            auto& dst = acc[static_cast<size_t>(g.mult(h, k))];
            for (const auto& [t1, c1] : vh.terms)
                for (const auto& [t2, c2] : vk.terms) dst[static_cast<size_t>((t1 + t2) % e)] += c1 * c2;
        }
    }
    const Int deg = t.degrees[static_cast<size_t>(chi)];
    for (Int x = 0; x < n; ++x) {
        CycInt lhs = reduce_dense(t.ctx, acc[static_cast<size_t>(x)]);
        for (size_t i = 0; i < lhs.coeffs().size(); ++i) lhs[i] *= deg;
        CycInt rhs = zeta_canonical(t.ctx, zeta_scale(out.values[static_cast<size_t>(x)], n));
        if (lhs != rhs) fail(Errc::NotIdempotent, "e(chi) is not idempotent");
    }
    return out;
}

GroupAlgebraElement idempotent_eQ(const CharTable& t, Int chi) {
    const Group& g = t.group;
    const Int n = g.size();
    const Int e = t.exponent;
    GaloisClasses gc = galois_classes(t);
    const std::vector<Int>& orbit = gc.classes[static_cast<size_t>(gc.class_of[static_cast<size_t>(chi)])];
    // per class: sum over the orbit, which must be rational
    std::vector<Rational> class_val(static_cast<size_t>(t.classes.count()));
    for (Int k = 0; k < t.classes.count(); ++k) {
        ZetaSum sum;
        for (Int psi : orbit) sum = zeta_add(sum, t.value(psi, k), e);
        CycInt canon = zeta_canonical(t.ctx, sum);
        if (!canon.is_rational())
            fail(Errc::NonRationalCoefficients, "orbit sum has irrational coefficients");
        class_val[static_cast<size_t>(k)] = Rational(canon.rational_part());
    }
    Rational scale(t.degrees[static_cast<size_t>(chi)], n);
    GroupAlgebraElement out(g);
    for (Int x = 0; x < n; ++x)
        out[static_cast<size_t>(x)] =
            scale * class_val[static_cast<size_t>(t.classes.class_of[static_cast<size_t>(g.inv(x))])];
    if (!out.is_idempotent()) fail(Errc::NotIdempotent, "e_Q(chi) is not idempotent");
    if (!out.is_central()) fail(Errc::NotCentral, "e_Q(chi) is not central");
    return out;
}

GroupAlgebraElement epsilon_idempotent(const Group& g, const Subgroup& h, const Subgroup& n) {
    if (n.elements == h.elements) {
        GroupAlgebraElement out = subgroup_hat(g, h);
        if (!out.is_idempotent()) fail(Errc::NotIdempotent, "H-hat is not idempotent");
        return out;
    }
    QuotientGroup q = quotient_group(g, h, n);
    const Int qn = q.group.size();
    Int p = 0;
    for (Int d = 2; d * d <= qn; ++d)
        if (qn % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = qn;
    Subgroup zq = center(q.group);
    GroupAlgebraElement nhat = subgroup_hat(g, n);
    GroupAlgebraElement out = algebra_one(g);
    std::vector<char> covered(static_cast<size_t>(qn), 0);
    bool any = false;
    for (Int z : zq.elements) {
        if (z == q.group.identity() || covered[static_cast<size_t>(z)]) continue;
        if (q.group.order_of(z) != p) continue;
        // minimal normal subgroup <z> of the quotient (p-group socle)
        std::vector<char> in_d(static_cast<size_t>(qn), 0);
        Int y = q.group.identity();
        for (Int i = 0; i < p; ++i) {
            in_d[static_cast<size_t>(y)] = 1;
            if (i > 0) covered[static_cast<size_t>(y)] = 1;
            y = q.group.mult(y, z);
        }
        std::vector<Int> d_elements;
        for (Int x : h.elements)
            if (in_d[static_cast<size_t>(q.coset_of[static_cast<size_t>(x)])]) d_elements.push_back(x);
        std::sort(d_elements.begin(), d_elements.end());
        Subgroup dsub{g.impl(), d_elements, d_elements};
        out = out * (nhat - subgroup_hat(g, dsub));
        any = true;
    }
    if (!any) fail(Errc::BadSpec, "epsilon: quotient has no minimal normal subgroup");
    if (!out.is_idempotent()) fail(Errc::NotIdempotent, "epsilon(H,N) is not idempotent");
    return out;
}

// ---------------------------------------------------------------------------
// the primitive-central-idempotent theorem checks
// ---------------------------------------------------------------------------

bool PciReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string PciReport::to_json() const {
    nlohmann::json j;
    j["group"] = group;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    return j.dump();
}

PciReport verify_pci_theorem(const Group& g, const CharTable& t) {
    PciReport report;
    report.group = g.name();
    const Int n = g.size();
    for (Int chi = 0; chi < t.char_count(); ++chi) {
        if (t.degrees[static_cast<size_t>(chi)] == 1) continue;
        const std::string tag = "chi" + std::to_string(chi) + "(deg " +
                                std::to_string(t.degrees[static_cast<size_t>(chi)]) + ")";
        Subgroup z = char_center(t, chi);
        Subgroup ker = char_kernel(t, chi);
        Int deg = t.degrees[static_cast<size_t>(chi)];
        Int quotient_order = z.order() / ker.order();
        try {
            GroupAlgebraElement eq = idempotent_eQ(t, chi);
            GroupAlgebraElement eps = epsilon_idempotent(g, z, ker);
            report.checks.push_back({tag + " e_Q==epsilon(Z,ker)", eq == eps, ""});
            Rational idc = eq[static_cast<size_t>(g.identity())];
            Int fdeg = field_degree(t, chi);
            report.checks.push_back(
                {tag + " dim: |G| e_Q[1] == chi(1)^2 [Q(chi):Q]",
                 Rational(n) * idc == Rational(deg * deg * fdeg), ""});
            report.checks.push_back({tag + " [Q(chi):Q] == phi(|Z/ker|)",
                                     fdeg == euler_phi(quotient_order), ""});
            report.checks.push_back({tag + " conductor == |Z/ker|",
                                     field_conductor(t, chi) == quotient_order, ""});
            report.checks.push_back({tag + " chi(1) == |G/Z|^(1/2)",
                                     deg * deg * z.order() == n, ""});
        } catch (const Error& err) {
            report.checks.push_back({tag + " (exception)", false, err.what()});
        }
    }
    return report;
}

}  // namespace qga
