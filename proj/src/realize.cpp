#include "qga/realize.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qga {

RealizedGroup realize_two_gen(const TwoGenParams& t) {
    RealizedGroup r;
    r.group = make_two_gen(t);
    r.name = r.group.name();
    r.formula = two_gen_decompose(t);
    // Z_delta = <a^{p^delta}, b^{p^delta}, c>, [Z_delta, G] = <c^{p^delta}>
    Int a = r.group.generators()[0];
    Int b = r.group.generators()[1];
    Int c = r.group.commutator(a, b);
    for (Int delta = 1; delta <= t.gamma; ++delta) {
        GvzWitnessLayer layer;
        layer.delta = delta;
        Int pd = ipow(t.p, delta);
        layer.z_gens = {r.group.pow(a, pd), r.group.pow(b, pd), c};
        layer.k_gens = {r.group.pow(c, pd)};
        r.witness.layers.push_back(std::move(layer));
    }
    return r;
}

PolycyclicSpec nenciu_presentation(Int n, Int p) {
    if (n < 1) fail(Errc::BadSpec, "nenciu_presentation: n >= 1 required");
    if (!is_prime(p) || p <= n + 1)
        fail(Errc::PrimeTooSmall, "nenciu_presentation: requires prime p > n+1");
    PolycyclicSpec spec;
    const Int m = 2 * n + 1;
    // order: a_1..a_n, b_n, b_{n-1}, ..., b_0
    for (Int i = 1; i <= n; ++i) spec.names.push_back("a" + std::to_string(i));
    for (Int j = n; j >= 0; --j) spec.names.push_back("b" + std::to_string(j));
    spec.orders.assign(static_cast<size_t>(m), p);
    auto a_idx = [&](Int i) { return i - 1; };
    auto b_idx = [&](Int j) { return n + (n - j); };
    // [a_i, b_j] = b_{j-1}       for 1 <  i <= j
    //            = b_{j-1}^{p-1} for 1 == i <= j
    // stored as [b_j, a_i] = inverse tail (b_j is the later generator)
    for (Int j = 1; j <= n; ++j) {
        for (Int i = 1; i <= j; ++i) {
            std::vector<Int> tail(static_cast<size_t>(m), 0);
            tail[static_cast<size_t>(b_idx(j - 1))] = (i == 1) ? 1 : p - 1;
            spec.comm_tails[{b_idx(j), a_idx(i)}] = std::move(tail);
        }
    }
    return spec;
}

RealizedGroup realize_nenciu(Int n, Int p) {
    RealizedGroup r;
    r.group = make_polycyclic(nenciu_presentation(n, p));
    r.group.set_name("Nenciu(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")");
    r.name = r.group.name();
    r.formula = decompose_nested_gvz(nenciu_gvz_data(n, p));
    // Z_r = <a_{r+1},...,a_n, b_0,...,b_{n-r}>, [Z_r, G] = <b_0,...,b_{n-r-1}>
    const std::vector<Int>& gens = r.group.generators();
    auto a_gen = [&](Int i) { return gens[static_cast<size_t>(i - 1)]; };
    auto b_gen = [&](Int j) { return gens[static_cast<size_t>(n + (n - j))]; };
    for (Int layer_r = 1; layer_r <= n; ++layer_r) {
        GvzWitnessLayer layer;
        layer.delta = layer_r;
        for (Int i = layer_r + 1; i <= n; ++i) layer.z_gens.push_back(a_gen(i));
        for (Int j = 0; j <= n - layer_r; ++j) layer.z_gens.push_back(b_gen(j));
        for (Int j = 0; j <= n - layer_r - 1; ++j) layer.k_gens.push_back(b_gen(j));
        if (layer.k_gens.empty()) layer.k_gens.push_back(r.group.identity());
        r.witness.layers.push_back(std::move(layer));
    }
    return r;
}

RealizedGroup realize_lewis(Int n, Int p) {
    RealizedGroup r;
    r.group = make_metacyclic(n, p);
    r.name = r.group.name();
    r.formula = decompose_nested_gvz(lewis_gvz_data(n, p));
    Int x = r.group.generators()[0];
    Int y = r.group.generators()[1];
    for (Int layer_r = 1; layer_r <= n; ++layer_r) {
        GvzWitnessLayer layer;
        layer.delta = layer_r;
        Int pr = ipow(p, layer_r);
        layer.z_gens = {r.group.pow(x, pr), r.group.pow(y, pr)};
        layer.k_gens = {r.group.pow(x, pr * p)};
        r.witness.layers.push_back(std::move(layer));
    }
    return r;
}

RealizedGroup realize_abelian(const AbelianPType& t) {
    RealizedGroup r;
    r.group = make_abelian(t);
    r.name = r.group.name();
    r.formula = decompose_abelian(t);
    return r;
}

RealizedGroup realize_maximal_class_81() {
    PolycyclicSpec spec;
    spec.names = {"s", "x", "y", "z"};
    spec.orders = {3, 3, 3, 3};
    // [x,s] = y, [y,s] = z, everything else commutes: C3 wr C3 shape, class 3
    spec.comm_tails[{1, 0}] = {0, 0, 1, 0};
    spec.comm_tails[{2, 0}] = {0, 0, 0, 1};
    RealizedGroup r;
    r.group = make_polycyclic(spec);
    r.group.set_name("MaxClass81");
    r.name = r.group.name();
    r.expect_nested = false;
    r.formula = WeddDecomp(81);  // no formula claim; oracle-only control group
    return r;
}

std::vector<TwoGenParams> p_good_tuples(Int p, Int n) {
    std::vector<TwoGenParams> out;
    for (Int alpha = 1; alpha <= n; ++alpha)
        for (Int beta = 1; beta <= alpha; ++beta) {
            Int gamma = n - alpha - beta;
            if (gamma < 1 || gamma > beta) continue;
            for (Int rho = 0; rho <= gamma; ++rho)
                for (Int sigma = 0; sigma <= gamma; ++sigma) {
                    TwoGenParams t{p, alpha, beta, gamma, rho, sigma};
                    if (validate_p_good(t) != TauClass::Invalid) out.push_back(t);
                }
        }
    return out;
}

std::vector<RealizedGroup> corpus(const std::string& tag) {
    std::vector<RealizedGroup> out;
    if (tag == "small" || tag == "full") {
        const Int nmax = tag == "small" ? 5 : 6;
        for (Int n = 3; n <= nmax; ++n)
            for (const TwoGenParams& t : p_good_tuples(3, n)) out.push_back(realize_two_gen(t));
        out.push_back(realize_nenciu(1, 3));
        out.push_back(realize_lewis(1, 3));
        out.push_back(realize_lewis(2, 3));
        out.push_back(realize_abelian(make_type(3, {1, 2})));
        out.push_back(realize_abelian(make_type(3, {2, 2})));
        out.push_back(realize_maximal_class_81());
        if (tag == "full") {
            out.push_back(realize_nenciu(1, 5));
            out.push_back(realize_nenciu(2, 5));
        }
        return out;
    }
    fail(Errc::BadSpec, "unknown corpus tag: " + tag);
}

CharTable oracle_table(const RealizedGroup& r, std::optional<Int> bound) {
    Int cap = bound.value_or(oracle_bound());
    if (r.group.size() <= cap) return character_table(r.group, cap);
    if (r.witness.layers.empty())
        fail(Errc::BoundExceeded, r.name + ": too large for Dixon and no witness data");
    return gvz_fast_table(r.group, r.witness);
}

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["group"] = group;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    return j.dump();
}

VerifyReport verify_group(const RealizedGroup& r, const VerifyOptions& opt) {
    VerifyReport report;
    report.group = r.name;
    try {
        CharTable t = oracle_table(r, opt.bound);
        if (r.formula.group_order() > 0) {
            WeddDecomp oracle = rational_decomposition(t);
            bool equal = decomp_equal(r.formula, oracle);
            report.checks.push_back({"formula == oracle decomposition", equal,
                                     equal ? oracle.render()
                                           : "formula " + r.formula.render() + " vs oracle " + oracle.render()});
        }
        bool nested = is_nested_gvz(t);
        report.checks.push_back({std::string("nested GVZ predicate == ") + (r.expect_nested ? "true" : "false"),
                                 nested == r.expect_nested, ""});
        // Galois-conjugate <=> equal kernel for same-degree nonlinear pairs
        {
            GaloisClasses gc = galois_classes(t);
            std::vector<std::vector<Int>> kernels(static_cast<size_t>(t.char_count()));
            for (Int i = 0; i < t.char_count(); ++i)
                if (t.degrees[static_cast<size_t>(i)] > 1) kernels[static_cast<size_t>(i)] = char_kernel(t, i).elements;
            bool lemma = true;
            for (Int i = 0; i < t.char_count() && lemma; ++i) {
                if (t.degrees[static_cast<size_t>(i)] == 1) continue;
                for (Int j = i + 1; j < t.char_count() && lemma; ++j) {
                    if (t.degrees[static_cast<size_t>(j)] != t.degrees[static_cast<size_t>(i)]) continue;
                    bool conj = gc.class_of[static_cast<size_t>(i)] == gc.class_of[static_cast<size_t>(j)];
                    bool same_ker = kernels[static_cast<size_t>(i)] == kernels[static_cast<size_t>(j)];
                    if (conj != same_ker) lemma = false;
                }
            }
            report.checks.push_back({"Galois-conjugate <=> equal kernel (same degree, nonlinear)", lemma, ""});
        }
        if (opt.with_pci && r.expect_nested) {
            PciReport pci = verify_pci_theorem(r.group, t);
            report.checks.push_back({"idempotent theorem (all nonlinear characters)", pci.all_pass(),
                                     std::to_string(pci.checks.size()) + " checks"});
            if (!pci.all_pass())
                for (const auto& c : pci.checks)
                    if (!c.pass) report.checks.push_back({"  pci: " + c.name, false, c.detail});
        }
    } catch (const Error& e) {
        report.checks.push_back({std::string("oracle run (") + errc_name(e.code()) + ")", false, e.what()});
    }
    return report;
}

}  // namespace qga
