#include "qga/decomp.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace qga {

void WeddDecomp::add(Int multiplicity, Int matrix_size, Int conductor) {
    if (matrix_size < 1 || conductor < 1) fail(Errc::BadSpec, "WeddDecomp::add: bad component");
    if (multiplicity < 0) fail(Errc::NegativeMultiplicity, "WeddDecomp::add: negative multiplicity");
    if (multiplicity == 0) return;
    parts_[{matrix_size, conductor}] += multiplicity;
}

std::vector<SimpleComponent> WeddDecomp::components() const {
    std::vector<SimpleComponent> out;
    out.reserve(parts_.size());
    for (const auto& [key, mult] : parts_) out.push_back({mult, key.first, key.second});
    return out;
}

Int WeddDecomp::dimension() const {
    Int s = 0;
    for (const auto& [key, mult] : parts_)
        s += mult * key.first * key.first * euler_phi(key.second);
    return s;
}

void WeddDecomp::check_dimension() const {
    if (dimension() != group_order_)
        fail(Errc::BadSpec, "WeddDecomp: dimension identity violated: " +
                                std::to_string(dimension()) + " != " + std::to_string(group_order_));
}

std::string WeddDecomp::render() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : components()) {
        if (!first) os << " + ";
        first = false;
        if (c.multiplicity != 1) os << c.multiplicity << " ";
        std::string field = c.conductor == 1 ? "Q" : "Q(z" + std::to_string(c.conductor) + ")";
        if (c.matrix_size == 1)
            os << field;
        else
            os << "M" << c.matrix_size << "(" << field << ")";
    }
    if (first) os << "0";
    return os.str();
}

std::string WeddDecomp::to_json() const {
    nlohmann::json j;
    j["group_order"] = group_order_;
    j["components"] = nlohmann::json::array();
    for (const auto& c : components())
        j["components"].push_back({{"mult", c.multiplicity}, {"m", c.matrix_size}, {"d", c.conductor}});
    return j.dump();
}

WeddDecomp WeddDecomp::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    WeddDecomp d(j.at("group_order").get<Int>());
    for (const auto& c : j.at("components"))
        d.add(c.at("mult").get<Int>(), c.at("m").get<Int>(), c.at("d").get<Int>());
    return d;
}

bool decomp_equal(const WeddDecomp& a, const WeddDecomp& b) { return a == b; }

void NestedGVZData::validate() const {
    if (p < 3 || !is_prime(p)) fail(Errc::NotOddPrime, "NestedGVZData: p must be an odd prime");
    if (abelianization.p != p) fail(Errc::BadSpec, "NestedGVZData: abelianization prime mismatch");
    Int prev_delta = 0;
    for (const auto& layer : layers) {
        if (layer.delta <= prev_delta) fail(Errc::BadSpec, "NestedGVZData: deltas not increasing");
        prev_delta = layer.delta;
        if (layer.q.p != p || layer.q_prev.p != p)
            fail(Errc::BadSpec, "NestedGVZData: layer prime mismatch");
        if (layer.q.exponent() % layer.q_prev.exponent() != 0)
            fail(Errc::BadSpec, "NestedGVZData: exp(q_prev) must divide exp(q)");
        if (layer.q.order() % layer.q_prev.order() != 0)
            fail(Errc::BadSpec, "NestedGVZData: |q_prev| must divide |q|");
    }
    Int n = group_order();
    (void)plog(p, n);  // NotPGroup -> surfaced as BadSpec below
}

Int NestedGVZData::group_order() const {
    Int n = abelianization.order();
    for (const auto& layer : layers)
        n += (layer.q.order() - layer.q_prev.order()) * ipow(p, 2 * layer.delta);
    return n;
}

WeddDecomp perlis_walker(const AbelianPType& t) {
    WeddDecomp d(t.order());
    d.add(1, 1, 1);
    for (Int lambda = 1; !t.exponents.empty() && lambda <= t.exponents.back(); ++lambda)
        d.add(count_cyclic_subgroups(t, lambda), 1, ipow(t.p, lambda));
    d.check_dimension();
    return d;
}

WeddDecomp decompose_abelian(const AbelianPType& t) { return perlis_walker(t); }

namespace {

// Shared layer expansion: components over d | exp(q), with a'_d = 0 when
// d does not divide exp(q_prev).
void add_layer(WeddDecomp& out, Int p, Int matrix_size, const AbelianPType& q,
               const AbelianPType& q_prev) {
    Int m_exp = q.trivial() ? 0 : q.exponents.back();
    Int mprev_exp = q_prev.trivial() ? 0 : q_prev.exponents.back();
    for (Int lambda = 0; lambda <= m_exp; ++lambda) {
        Int a = count_cyclic_subgroups(q, lambda);
        Int ap = lambda <= mprev_exp ? count_cyclic_subgroups(q_prev, lambda) : 0;
        if (a - ap < 0)
            fail(Errc::NegativeMultiplicity, "nested GVZ layer: a_d < a'_d at d = p^" +
                                                 std::to_string(lambda));
        out.add(a - ap, matrix_size, ipow(p, lambda));
    }
}

}  // namespace

WeddDecomp decompose_vz(Int p, const AbelianPType& abelianization, const AbelianPType& center,
                        const AbelianPType& center_mod_derived, Int center_index_sqrt) {
    if (p < 3 || !is_prime(p)) fail(Errc::NotOddPrime, "decompose_vz: p must be an odd prime");
    if (center.exponent() % center_mod_derived.exponent() != 0)
        fail(Errc::BadSpec, "decompose_vz: exp(Z/G') must divide exp(Z)");
    if (center_index_sqrt < 1) fail(Errc::BadSpec, "decompose_vz: bad index");

    WeddDecomp out = perlis_walker(abelianization);
    add_layer(out, p, center_index_sqrt, center, center_mod_derived);
    Int order = abelianization.order() +
                (center.order() - center_mod_derived.order()) * center_index_sqrt * center_index_sqrt;
    out.set_group_order(order);
    out.check_dimension();
    return out;
}

WeddDecomp decompose_nested_gvz(const NestedGVZData& data) {
    data.validate();
    WeddDecomp out = perlis_walker(data.abelianization);
    for (const auto& layer : data.layers)
        add_layer(out, data.p, ipow(data.p, layer.delta), layer.q, layer.q_prev);
    out.set_group_order(data.group_order());
    out.check_dimension();
    return out;
}

}  // namespace qga
