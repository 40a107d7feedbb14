#include "qga/families.hpp"

#include <algorithm>
#include <sstream>

namespace qga {

std::string TwoGenParams::str() const {
    std::ostringstream os;
    os << "G(" << alpha << "," << beta << "," << gamma << ";" << rho << "," << sigma << ")@p=" << p;
    return os.str();
}

const char* tau_name(TauClass c) {
    switch (c) {
        case TauClass::Tau1: return "tau_n1";
        case TauClass::Tau2: return "tau_n2";
        case TauClass::Tau3: return "tau_n3";
        case TauClass::Tau4: return "tau_n4";
        case TauClass::Tau5: return "tau_n5";
        case TauClass::Invalid: return "invalid";
    }
    return "?";
}

bool in_tau(const TwoGenParams& t) {
    return t.alpha >= t.beta && t.beta >= t.gamma && t.gamma >= 1 && t.rho >= 0 &&
           t.rho <= t.gamma && t.sigma >= 0 && t.sigma <= t.gamma;
}

TauClass validate_p_good(const TwoGenParams& t) {
    if (!in_tau(t)) return TauClass::Invalid;
    const Int a = t.alpha, b = t.beta, g = t.gamma, r = t.rho, s = t.sigma;
    if (a > b && s == g && g >= r) return TauClass::Tau1;
    if (a > b && r == g && g > s) return TauClass::Tau2;
    if (a > b && std::min(g, s + a - b) > r && r > s) return TauClass::Tau3;
    if (a == b && a > g && s == g) return TauClass::Tau4;
    if (a == g && b == g && s == g) return TauClass::Tau5;
    return TauClass::Invalid;
}

AbelianPType two_gen_center_type(const TwoGenParams& t) {
    if (!in_tau(t)) fail(Errc::InvalidTuple, "two_gen_center_type: " + t.str());
    if (t.rho <= t.sigma)
        return make_type(t.p, {t.alpha - t.rho, t.beta - t.gamma, t.rho});
    return make_type(t.p, {t.alpha - t.gamma, t.beta - t.sigma, t.sigma});
}

RelationMatrix two_gen_layer_relations(const TwoGenParams& t, Int delta, Int killed_exp) {
    // Generators (A, B, C) = (a^{p^delta}, b^{p^delta}, [a,b]) inside the
    // abelian quotient Z_delta / <[a,b]^{p^killed_exp}>.
    RelationMatrix m;
    m.cols = 3;
    m.rows.push_back({ipow(t.p, t.alpha - delta), 0, -ipow(t.p, t.rho)});
    m.rows.push_back({0, ipow(t.p, t.beta - delta), -ipow(t.p, t.sigma)});
    m.rows.push_back({0, 0, ipow(t.p, t.gamma)});
    m.rows.push_back({0, 0, ipow(t.p, killed_exp)});
    return m;
}

NestedGVZData two_gen_gvz_data(const TwoGenParams& t) {
    if (!in_tau(t)) fail(Errc::InvalidTuple, "two_gen_gvz_data: " + t.str());
    NestedGVZData data;
    data.p = t.p;
    {
        // G/G' from the relation lattice of (a, b) with [a,b] ~ 1
        RelationMatrix ab;
        ab.cols = 2;
        ab.rows.push_back({ipow(t.p, t.alpha), 0});
        ab.rows.push_back({0, ipow(t.p, t.beta)});
        data.abelianization = smith_invariants(ab, t.p);
    }
    for (Int delta = 1; delta <= t.gamma; ++delta) {
        GvzLayer layer;
        layer.delta = delta;
        layer.q = smith_invariants(two_gen_layer_relations(t, delta, delta), t.p);
        layer.q_prev = smith_invariants(two_gen_layer_relations(t, delta, delta - 1), t.p);
        data.layers.push_back(std::move(layer));
    }
    data.validate();
    return data;
}

WeddDecomp two_gen_decompose(const TwoGenParams& t) {
    return decompose_nested_gvz(two_gen_gvz_data(t));
}

WeddDecomp closed_form_tau5(const TwoGenParams& t) {
    if (validate_p_good(t) != TauClass::Tau5) fail(Errc::NotTau5, "closed_form_tau5: " + t.str());
    const Int p = t.p, g = t.gamma, r = t.rho;
    WeddDecomp out(ipow(p, 3 * g));
    out.add(1, 1, 1);
    for (Int m = 1; m <= g; ++m) out.add(ipow(p, m) + ipow(p, m - 1), 1, ipow(p, m));

    if (g <= 2 * r + 1) {
        for (Int d = 1; d <= g / 2; ++d) {
            out.add(ipow(p, 2 * d), ipow(p, d), ipow(p, d));
            for (Int m = d + 1; m <= g - d; ++m)
                out.add(ipow(p, m + d) - ipow(p, m + d - 2), ipow(p, d), ipow(p, m));
        }
        for (Int d = g / 2 + 1; d <= g; ++d)
            out.add(ipow(p, 2 * (g - d)), ipow(p, d), ipow(p, d));
    } else {
        for (Int d = 1; d <= r; ++d) {
            out.add(ipow(p, 2 * d), ipow(p, d), ipow(p, d));
            for (Int m = d + 1; m <= g - d; ++m)
                out.add(ipow(p, m + d) - ipow(p, m + d - 2), ipow(p, d), ipow(p, m));
        }
        for (Int d = r + 1; d <= g - r - 1; ++d)
            out.add(ipow(p, g + r - d), ipow(p, d), ipow(p, g - r));
        for (Int d = g - r; d <= g; ++d)
            out.add(ipow(p, 2 * (g - d)), ipow(p, d), ipow(p, d));
    }
    out.check_dimension();
    return out;
}

NestedGVZData nenciu_gvz_data(Int n, Int p) {
    if (n < 1) fail(Errc::BadSpec, "nenciu_gvz_data: n must be >= 1");
    if (!is_prime(p) || p <= n + 1)
        fail(Errc::PrimeTooSmall, "nenciu_gvz_data: requires prime p > n+1");
    NestedGVZData data;
    data.p = p;
    data.abelianization = make_type(p, std::vector<Int>(static_cast<size_t>(n + 1), 1));
    for (Int r = 1; r <= n; ++r) {
        GvzLayer layer;
        layer.delta = r;
        layer.q = make_type(p, std::vector<Int>(static_cast<size_t>(n - r + 1), 1));
        layer.q_prev = make_type(p, std::vector<Int>(static_cast<size_t>(n - r), 1));
        data.layers.push_back(std::move(layer));
    }
    data.validate();
    return data;
}

WeddDecomp closed_form_nenciu(Int n, Int p) {
    if (n < 1) fail(Errc::BadSpec, "closed_form_nenciu: n must be >= 1");
    if (!is_prime(p) || p <= n + 1)
        fail(Errc::PrimeTooSmall, "closed_form_nenciu: requires prime p > n+1");
    WeddDecomp out(ipow(p, 2 * n + 1));
    out.add(1, 1, 1);
    Int geom = 0;
    for (Int i = 0; i <= n; ++i) geom += ipow(p, i);
    out.add(geom, 1, p);
    for (Int r = 1; r <= n; ++r) out.add(ipow(p, n - r), ipow(p, r), p);
    out.check_dimension();
    return out;
}

NestedGVZData lewis_gvz_data(Int n, Int p) {
    if (n < 1) fail(Errc::BadSpec, "lewis_gvz_data: n must be >= 1");
    if (p < 3 || !is_prime(p)) fail(Errc::NotOddPrime, "lewis_gvz_data: p must be an odd prime");
    NestedGVZData data;
    data.p = p;
    data.abelianization = make_type(p, {1, n});
    for (Int r = 1; r <= n; ++r) {
        GvzLayer layer;
        layer.delta = r;
        layer.q = make_type(p, {1, n - r});
        layer.q_prev = make_type(p, {n - r});
        data.layers.push_back(std::move(layer));
    }
    data.validate();
    return data;
}

WeddDecomp closed_form_lewis(Int n, Int p) {
    if (n < 1) fail(Errc::BadSpec, "closed_form_lewis: n must be >= 1");
    if (p < 3 || !is_prime(p)) fail(Errc::NotOddPrime, "closed_form_lewis: p must be an odd prime");
    WeddDecomp out(ipow(p, 2 * n + 1));
    out.add(1, 1, 1);
    out.add(p + 1, 1, p);
    for (Int r = 2; r <= n; ++r) out.add(p, 1, ipow(p, r));
    for (Int r = 1; r <= n - 1; ++r) out.add(p, ipow(p, r), p);
    for (Int r = 1; r <= n - 2; ++r)
        for (Int m = 2; m <= n - r; ++m) out.add(p - 1, ipow(p, r), ipow(p, m));
    out.add(1, ipow(p, n), p);
    out.check_dimension();
    return out;
}

WeddDecomp p5_decompose(const P5Input& input) {
    if (input.p < 3 || !is_prime(input.p)) fail(Errc::NotOddPrime, "p5_decompose: odd prime required");
    if (input.nilpotency_class == 2) {
        return decompose_vz(input.p, input.abelianization, input.center, input.center_mod_derived,
                            input.center_index_sqrt);
    }
    if (input.nilpotency_class == 3) {
        const Int p = input.p;
        if (input.abelianization.order() != ipow(p, 3))
            fail(Errc::BadSpec, "p5_decompose: class-3 abelianization must have order p^3");
        WeddDecomp out = perlis_walker(input.abelianization);
        out.add(p, p, p);
        out.add(1, p * p, p);
        out.set_group_order(ipow(p, 5));
        out.check_dimension();
        return out;
    }
    fail(Errc::BadClass, "p5_decompose: nilpotency class must be 2 or 3");
}

}  // namespace qga
