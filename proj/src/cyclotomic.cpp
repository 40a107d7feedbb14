#include "qga/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace qga {

namespace {

// polynomial helpers over Z, little-endian coefficient vectors
std::vector<Int> poly_trim(std::vector<Int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// exact division a / b (monic-leading b up to sign), remainder must vanish
std::vector<Int> poly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
    a = poly_trim(std::move(a));
    std::vector<Int> bb = poly_trim(b);
    if (bb.empty()) fail(Errc::BadSpec, "poly_div_exact: division by zero");
    std::vector<Int> q(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0, 0);
    while (a.size() >= bb.size() && !a.empty()) {
        Int lead = a.back();
        if (lead % bb.back() != 0) fail(Errc::BadSpec, "poly_div_exact: inexact");
        Int f = lead / bb.back();
        size_t shift = a.size() - bb.size();
        q[shift] = f;
        for (size_t i = 0; i < bb.size(); ++i) a[shift + i] -= f * bb[i];
        a = poly_trim(std::move(a));
    }
    if (!a.empty()) fail(Errc::BadSpec, "poly_div_exact: nonzero remainder");
    return q;
}

std::vector<Int> cyclotomic_poly(Int n) {
    static std::map<Int, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::function<std::vector<Int>(Int)> compute = [&](Int m) -> std::vector<Int> {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        std::vector<Int> num(static_cast<size_t>(m + 1), 0);
        num[0] = -1;
        num[static_cast<size_t>(m)] = 1;  // x^m - 1
        for (Int d = 1; d < m; ++d)
            if (m % d == 0) num = poly_div_exact(std::move(num), compute(d));
        cache[m] = num;
        return num;
    };
    return compute(n);
}

}  // namespace

CyclotomicContext::CyclotomicContext(Int e) : e_(e) {
    if (e < 1) fail(Errc::BadSpec, "CyclotomicContext: modulus must be positive");
    phi_poly_ = cyclotomic_poly(e);
    phi_ = static_cast<Int>(phi_poly_.size()) - 1;
    const Int rows = std::max<Int>(2 * phi_ - 1, e + 1);
    rows_.resize(static_cast<size_t>(rows));
    for (Int k = 0; k < rows; ++k) {
        std::vector<Int>& r = rows_[static_cast<size_t>(k)];
        r.assign(static_cast<size_t>(phi_), 0);
        if (k < phi_) {
            r[static_cast<size_t>(k)] = 1;
        } else {
            // x^k = x * x^{k-1} mod Phi_e
            const std::vector<Int>& prev = rows_[static_cast<size_t>(k - 1)];
            std::vector<Int> shifted(static_cast<size_t>(phi_ + 1), 0);
            for (Int i = 0; i < phi_; ++i) shifted[static_cast<size_t>(i + 1)] = prev[static_cast<size_t>(i)];
            Int lead = shifted[static_cast<size_t>(phi_)];
            for (Int i = 0; i < phi_; ++i)
                r[static_cast<size_t>(i)] = shifted[static_cast<size_t>(i)] - lead * phi_poly_[static_cast<size_t>(i)];
        }
    }
}

std::shared_ptr<const CyclotomicContext> CyclotomicContext::get(Int e) {
    static std::map<Int, std::shared_ptr<const CyclotomicContext>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    auto ctx = std::shared_ptr<const CyclotomicContext>(new CyclotomicContext(e));
    cache[e] = ctx;
    return ctx;
}

ZetaSum ZetaSum::root(Int t, Int coeff) {
    ZetaSum s;
    if (coeff != 0) s.terms.push_back({t, coeff});
    return s;
}

Int ZetaSum::coefficient_sum() const {
    Int s = 0;
    for (const auto& [t, c] : terms) s += c;
    return s;
}

std::size_t ZetaSum::hash(std::size_t seed) const {
    auto mix = [&seed](std::size_t v) {
        seed ^= v;
        seed *= 1099511628211ull;
    };
    for (const auto& [t, c] : terms) {
        mix(static_cast<std::size_t>(t) + 0x9e3779b97f4a7c15ull);
        mix(static_cast<std::size_t>(c));
    }
    return seed;
}

void zeta_normalize(ZetaSum& a, Int e) {
    for (auto& [t, c] : a.terms) t = ((t % e) + e) % e;
    std::sort(a.terms.begin(), a.terms.end());
    std::vector<std::pair<Int, Int>> out;
    for (const auto& [t, c] : a.terms) {
        if (!out.empty() && out.back().first == t)
            out.back().second += c;
        else
            out.push_back({t, c});
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
              out.end());
    a.terms = std::move(out);
}

ZetaSum zeta_add(const ZetaSum& a, const ZetaSum& b, Int e) {
    ZetaSum r;
    r.terms = a.terms;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    zeta_normalize(r, e);
    return r;
}

ZetaSum zeta_scale(const ZetaSum& a, Int c) {
    if (c == 0) return {};
    ZetaSum r = a;
    for (auto& [t, v] : r.terms) v *= c;
    return r;
}

ZetaSum zeta_mult(const ZetaSum& a, const ZetaSum& b, Int e) {
    ZetaSum r;
    for (const auto& [t1, c1] : a.terms)
        for (const auto& [t2, c2] : b.terms) r.terms.push_back({(t1 + t2) % e, c1 * c2});
    zeta_normalize(r, e);
    return r;
}

ZetaSum zeta_conj(const ZetaSum& a, Int e) {
    ZetaSum r = a;
    for (auto& [t, c] : r.terms) t = (e - t) % e;
    zeta_normalize(r, e);
    return r;
}

ZetaSum zeta_galois(const ZetaSum& a, Int t, Int e) {
    ZetaSum r = a;
    for (auto& [exp, c] : r.terms) exp = exp * t % e;
    zeta_normalize(r, e);
    return r;
}

CycInt reduce_dense(const std::shared_ptr<const CyclotomicContext>& ctx, const std::vector<Int>& dense) {
    CycInt r(ctx);
    const Int phi = ctx->degree();
    const Int e = ctx->modulus();
    // specialized fast reduction for prime-power moduli: zeta^t with t >= phi
    // satisfies zeta^t = -sum_{i<p-1} zeta^{i p^{k-1} + (t - phi)}
    Int p = 0, radical = e;
    for (Int d = 2; d * d <= radical; ++d)
        if (radical % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = radical;
    bool prime_power = e > 1;
    {
        Int m = e;
        while (m > 1) {
            if (m % p != 0) {
                prime_power = false;
                break;
            }
            m /= p;
        }
    }
    if (e == 1) {
        r[0] = 0;
        for (size_t t = 0; t < dense.size(); ++t) r[0] += dense[t];
        return r;
    }
    if (prime_power) {
        const Int step = e / p;  // p^{k-1}
        std::vector<Int> work = dense;
        work.resize(static_cast<size_t>(e), 0);
        for (Int t = e - 1; t >= phi; --t) {
            Int c = work[static_cast<size_t>(t)];
            if (c == 0) continue;
            work[static_cast<size_t>(t)] = 0;
            Int base = t - phi;
            for (Int i = 0; i < p - 1; ++i) work[static_cast<size_t>(base + i * step)] -= c;
        }
        for (Int i = 0; i < phi; ++i) r[static_cast<size_t>(i)] = work[static_cast<size_t>(i)];
        return r;
    }
    for (size_t t = 0; t < dense.size(); ++t) {
        if (dense[t] == 0) continue;
        const std::vector<Int>& row = ctx->row(static_cast<Int>(t) % e);
        for (size_t i = 0; i < row.size(); ++i) r[i] += dense[t] * row[i];
    }
    return r;
}

CycInt zeta_canonical(const std::shared_ptr<const CyclotomicContext>& ctx, const ZetaSum& s) {
    CycInt r(ctx);
    const Int e = ctx->modulus();
    for (const auto& [t, c] : s.terms) {
        const std::vector<Int>& row = ctx->row(((t % e) + e) % e);
        for (size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) r[i] += c * row[i];
    }
    return r;
}

}  // namespace qga
