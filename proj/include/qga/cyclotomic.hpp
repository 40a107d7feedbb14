#pragma once

#include <memory>
#include <vector>

#include "qga/common.hpp"

namespace qga {

/// Reduction tables for Q(zeta_e): the cyclotomic polynomial Phi_e and the
/// canonical forms of x^k mod Phi_e. Shared per modulus.
class CyclotomicContext {
public:
    static std::shared_ptr<const CyclotomicContext> get(Int e);

    Int modulus() const { return e_; }
    Int degree() const { return phi_; }
    const std::vector<Int>& phi_poly() const { return phi_poly_; }

    /// Canonical integer coefficients of x^k, 0 <= k < row_count().
    const std::vector<Int>& row(Int k) const { return rows_[static_cast<size_t>(k)]; }
    Int row_count() const { return static_cast<Int>(rows_.size()); }

private:
    explicit CyclotomicContext(Int e);
    Int e_ = 1;
    Int phi_ = 1;
    std::vector<Int> phi_poly_;             // monic, length phi_+1
    std::vector<std::vector<Int>> rows_;    // x^k mod Phi_e, k < max(2 phi - 1, e)
};

/// Formal integer combination of e-th roots of unity, kept sparse and sorted.
/// Character values live here as true eigenvalue multisets.
struct ZetaSum {
    std::vector<std::pair<Int, Int>> terms;  // (exponent, coefficient), coeff != 0

    static ZetaSum zero() { return {}; }
    static ZetaSum root(Int t, Int coeff = 1);
    static ZetaSum integer(Int n) { return root(0, n); }

    bool syntactically_zero() const { return terms.empty(); }
    Int coefficient_sum() const;

    bool operator==(const ZetaSum& o) const { return terms == o.terms; }
    std::size_t hash(std::size_t seed = 1469598103934665603ull) const;
};

ZetaSum zeta_add(const ZetaSum& a, const ZetaSum& b, Int e);
ZetaSum zeta_scale(const ZetaSum& a, Int c);
ZetaSum zeta_mult(const ZetaSum& a, const ZetaSum& b, Int e);
ZetaSum zeta_conj(const ZetaSum& a, Int e);
ZetaSum zeta_galois(const ZetaSum& a, Int t, Int e);
void zeta_normalize(ZetaSum& a, Int e);

/// Exact element of Q(zeta_e) in canonical form: coefficients over the power
/// basis 1, zeta, ..., zeta^{phi(e)-1} after reduction mod Phi_e.
template <class Coeff>
class CycPoly {
public:
    CycPoly() = default;
    explicit CycPoly(std::shared_ptr<const CyclotomicContext> ctx)
        : ctx_(std::move(ctx)), c_(static_cast<size_t>(ctx_->degree())) {}

    static CycPoly constant(std::shared_ptr<const CyclotomicContext> ctx, Coeff v) {
        CycPoly r(std::move(ctx));
        r.c_[0] = std::move(v);
        return r;
    }
    static CycPoly from_zeta(const std::shared_ptr<const CyclotomicContext>& ctx, const ZetaSum& s) {
        CycPoly r(ctx);
        for (const auto& [t, c] : s.terms) {
            const std::vector<Int>& row = ctx->row(((t % ctx->modulus()) + ctx->modulus()) % ctx->modulus());
            for (size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) r.c_[i] += Coeff(c) * Coeff(row[i]);
        }
        return r;
    }

    const std::shared_ptr<const CyclotomicContext>& ctx() const { return ctx_; }
    const std::vector<Coeff>& coeffs() const { return c_; }
    Coeff& operator[](size_t i) { return c_[i]; }
    const Coeff& operator[](size_t i) const { return c_[i]; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Coeff rational_part() const { return c_.empty() ? Coeff(0) : c_[0]; }

    bool operator==(const CycPoly& o) const { return c_ == o.c_; }
    bool operator!=(const CycPoly& o) const { return !(*this == o); }

    CycPoly operator+(const CycPoly& o) const {
        CycPoly r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    CycPoly operator-(const CycPoly& o) const {
        CycPoly r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    CycPoly operator*(const CycPoly& o) const {
        const Int phi = ctx_->degree();
        std::vector<Coeff> raw(static_cast<size_t>(2 * phi - 1));
        for (Int i = 0; i < phi; ++i) {
            if (c_[static_cast<size_t>(i)] == 0) continue;
            for (Int j = 0; j < phi; ++j) {
                if (o.c_[static_cast<size_t>(j)] == 0) continue;
                raw[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
            }
        }
        CycPoly r(ctx_);
        for (size_t k = 0; k < raw.size(); ++k) {
            if (raw[k] == 0) continue;
            const std::vector<Int>& row = ctx_->row(static_cast<Int>(k));
            for (size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) r.c_[i] += raw[k] * Coeff(row[i]);
        }
        return r;
    }
    CycPoly scaled(const Coeff& s) const {
        CycPoly r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    /// Complex conjugation (zeta -> zeta^-1).
    CycPoly conj() const { return galois(ctx_->modulus() - 1); }
    /// Galois action zeta -> zeta^t (t coprime to the modulus).
    CycPoly galois(Int t) const {
        const Int e = ctx_->modulus();
        t = ((t % e) + e) % e;
        CycPoly r(ctx_);
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const std::vector<Int>& row = ctx_->row(static_cast<Int>(static_cast<Int>(j) * t % e));
            for (size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) r.c_[i] += c_[j] * Coeff(row[i]);
        }
        return r;
    }

private:
    std::shared_ptr<const CyclotomicContext> ctx_;
    std::vector<Coeff> c_;
};

using CycInt = CycPoly<Int>;
using Cyclotomic = CycPoly<Rational>;

/// Reduce a dense coefficient vector over zeta^0..zeta^{e-1} to canonical form.
CycInt reduce_dense(const std::shared_ptr<const CyclotomicContext>& ctx, const std::vector<Int>& dense);

CycInt zeta_canonical(const std::shared_ptr<const CyclotomicContext>& ctx, const ZetaSum& s);

}  // namespace qga
