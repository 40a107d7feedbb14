#include "qga/grouprep.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qga {

std::string GroupImpl::describe(Int x) const { return "g" + std::to_string(x); }

Group::Group(std::shared_ptr<const GroupImpl> impl, std::string name)
    : impl_(std::move(impl)), name_(std::move(name)) {
    const Int n = impl_->size();
    auto inv = std::make_shared<std::vector<Int>>(static_cast<size_t>(n));
    for (Int x = 0; x < n; ++x) (*inv)[static_cast<size_t>(x)] = impl_->inverse(x);
    inverses_ = std::move(inv);
    gens_ = impl_->generators();
}

Int Group::pow(Int x, Int e) const {
    if (e < 0) return pow(inv(x), -e);
    Int r = identity(), b = x;
    while (e > 0) {
        if (e & 1) r = mult(r, b);
        b = mult(b, b);
        e >>= 1;
    }
    return r;
}

Int Group::commutator(Int x, Int y) const { return mult(mult(mult(inv(x), inv(y)), x), y); }

Int Group::order_of(Int x) const {
    Int o = 1, y = x;
    while (y != identity()) {
        y = mult(y, x);
        ++o;
        if (o > size()) fail(Errc::InconsistentPresentation, "order_of: runaway");
    }
    return o;
}

Int Group::exponent() const {
    Int e = 1;
    for (Int x = 0; x < size(); ++x) e = e / gcd_int(e, order_of(x)) * order_of(x);
    return e;
}

bool Subgroup::contains(Int x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

// ---- two-generator class-2 groups ----------------------------------------

namespace {

class TwoGenImpl final : public GroupImpl {
public:
    explicit TwoGenImpl(const TwoGenParams& t)
        : p_(t.p),
          ma_(ipow(t.p, t.alpha)),
          mb_(ipow(t.p, t.beta)),
          mc_(ipow(t.p, t.gamma)),
          pr_(ipow(t.p, t.rho)),
          ps_(ipow(t.p, t.sigma)) {
        if (!in_tau(t)) fail(Errc::InvalidTuple, "make_two_gen: " + t.str());
        if (t.p < 3) fail(Errc::InvalidTuple, "make_two_gen: p must be odd");
    }

    Int size() const override { return ma_ * mb_ * mc_; }

    Int encode(Int i, Int j, Int k) const { return (i * mb_ + j) * mc_ + k; }

    // normalize arbitrary integer exponents: a^{p^alpha} = c^{p^rho},
    // b^{p^beta} = c^{p^sigma}, c^{p^gamma} = 1, all carries central.
    Int normalize(Int i, Int j, Int k) const {
        Int qi = i >= 0 ? i / ma_ : -((-i + ma_ - 1) / ma_);
        i -= qi * ma_;
        k += qi * pr_;
        Int qj = j >= 0 ? j / mb_ : -((-j + mb_ - 1) / mb_);
        j -= qj * mb_;
        k += qj * ps_;
        k %= mc_;
        if (k < 0) k += mc_;
        return encode(i, j, k);
    }

    Int mult(Int x, Int y) const override {
        Int k1 = x % mc_, j1 = (x / mc_) % mb_, i1 = x / (mc_ * mb_);
        Int k2 = y % mc_, j2 = (y / mc_) % mb_, i2 = y / (mc_ * mb_);
        return normalize(i1 + i2, j1 + j2, k1 + k2 - j1 * i2);
    }

    Int inverse(Int x) const override {
        Int k = x % mc_, j = (x / mc_) % mb_, i = x / (mc_ * mb_);
        return normalize(-i, -j, -k - j * i);
    }

    std::vector<Int> generators() const override { return {encode(1, 0, 0), encode(0, 1, 0)}; }

    std::string describe(Int x) const override {
        Int k = x % mc_, j = (x / mc_) % mb_, i = x / (mc_ * mb_);
        std::ostringstream os;
        os << "a^" << i << " b^" << j << " c^" << k;
        return os.str();
    }

private:
    Int p_, ma_, mb_, mc_, pr_, ps_;
};

class MetacyclicImpl final : public GroupImpl {
public:
    MetacyclicImpl(Int n, Int p) : mx_(ipow(p, n + 1)), my_(ipow(p, n)) {
        if (n < 1) fail(Errc::BadSpec, "make_metacyclic: n >= 1 required");
        if (p < 3 || !is_prime(p)) fail(Errc::NotOddPrime, "make_metacyclic: odd prime required");
        // (1+p)^j mod p^{n+1}
        pow1p_.resize(static_cast<size_t>(my_));
        Int v = 1;
        for (Int j = 0; j < my_; ++j) {
            pow1p_[static_cast<size_t>(j)] = v;
            v = v * (1 + p) % mx_;
        }
    }

    Int size() const override { return mx_ * my_; }
    Int encode(Int i, Int j) const { return i * my_ + j; }

    Int mult(Int x, Int y) const override {
        Int j1 = x % my_, i1 = x / my_;
        Int j2 = y % my_, i2 = y / my_;
        Int i = (i1 + i2 * pow1p_[static_cast<size_t>(j1)]) % mx_;
        return encode(i, (j1 + j2) % my_);
    }

    Int inverse(Int x) const override {
        Int j = x % my_, i = x / my_;
        Int jinv = (my_ - j) % my_;
        Int ii = (mx_ - i * pow1p_[static_cast<size_t>(jinv)] % mx_) % mx_;
        return encode(ii, jinv);
    }

    std::vector<Int> generators() const override { return {encode(1, 0), encode(0, 1)}; }

    std::string describe(Int x) const override {
        return "x^" + std::to_string(x / my_) + " y^" + std::to_string(x % my_);
    }

private:
    Int mx_, my_;
    std::vector<Int> pow1p_;
};

class AbelianImpl final : public GroupImpl {
public:
    explicit AbelianImpl(const AbelianPType& t) {
        for (Int a : t.exponents) moduli_.push_back(ipow(t.p, a));
        size_ = 1;
        for (Int m : moduli_) size_ *= m;
    }

    Int size() const override { return size_; }

    Int mult(Int x, Int y) const override {
        // mixed-radix componentwise addition
        Int out = 0, scale = 1;
        for (size_t d = 0; d < moduli_.size(); ++d) {
            Int m = moduli_[moduli_.size() - 1 - d];
            Int cx = x % m, cy = y % m;
            x /= m;
            y /= m;
            out += ((cx + cy) % m) * scale;
            scale *= m;
        }
        return out;
    }

    Int inverse(Int x) const override {
        Int out = 0, scale = 1;
        for (size_t d = 0; d < moduli_.size(); ++d) {
            Int m = moduli_[moduli_.size() - 1 - d];
            Int cx = x % m;
            x /= m;
            out += ((m - cx) % m) * scale;
            scale *= m;
        }
        return out;
    }

    std::vector<Int> generators() const override {
        std::vector<Int> g;
        Int scale = 1;
        for (size_t d = 0; d < moduli_.size(); ++d) {
            g.push_back(scale);
            scale *= moduli_[moduli_.size() - 1 - d];
        }
        return g;
    }

private:
    std::vector<Int> moduli_;
    Int size_ = 1;
};

// Collection from the left for triangular power-commutator presentations.
class PolycyclicImpl final : public GroupImpl {
public:
    explicit PolycyclicImpl(PolycyclicSpec spec) : spec_(std::move(spec)) {
        m_ = static_cast<Int>(spec_.orders.size());
        if (m_ == 0) fail(Errc::BadSpec, "make_polycyclic: no generators");
        if (spec_.names.size() != static_cast<size_t>(m_))
            fail(Errc::BadSpec, "make_polycyclic: names/orders mismatch");
        size_ = 1;
        for (Int q : spec_.orders) {
            if (q < 2) fail(Errc::BadSpec, "make_polycyclic: generator order < 2");
            size_ *= q;
            if (size_ > 200000) fail(Errc::BoundExceeded, "make_polycyclic: group too large");
        }
        for (const auto& [g, tail] : spec_.power_tails) check_tail(g, tail, g);
        for (const auto& [key, tail] : spec_.comm_tails) {
            if (!(key.first > key.second))
                fail(Errc::BadSpec, "make_polycyclic: commutator key must be [later, earlier]");
            check_tail(key.first, tail, key.first);
        }
        build_tables();
    }

    Int size() const override { return size_; }

    Int mult(Int x, Int y) const override {
        // apply y's normal-form letters to x via the generator tables
        std::vector<Int> ey = decode(y);
        Int r = x;
        for (Int g = 0; g < m_; ++g)
            for (Int c = 0; c < ey[static_cast<size_t>(g)]; ++c)
                r = rmul_[static_cast<size_t>(g)][static_cast<size_t>(r)];
        return r;
    }

    Int inverse(Int x) const override {
        // x^(order-1); orders are tiny
        Int r = 0, y = x;
        while (y != 0) {
            Int prev = r;
            r = y;
            y = mult(y, x);
            (void)prev;
        }
        return r;
    }

    std::vector<Int> generators() const override {
        std::vector<Int> g;
        for (Int i = 0; i < m_; ++i) g.push_back(gen_index(i));
        return g;
    }

    std::string describe(Int x) const override {
        std::vector<Int> e = decode(x);
        std::ostringstream os;
        bool any = false;
        for (Int i = 0; i < m_; ++i)
            if (e[static_cast<size_t>(i)]) {
                if (any) os << " ";
                os << spec_.names[static_cast<size_t>(i)] << "^" << e[static_cast<size_t>(i)];
                any = true;
            }
        if (!any) os << "1";
        return os.str();
    }

    std::vector<Int> decode(Int x) const {
        std::vector<Int> e(static_cast<size_t>(m_));
        for (Int i = m_ - 1; i >= 0; --i) {
            e[static_cast<size_t>(i)] = x % spec_.orders[static_cast<size_t>(i)];
            x /= spec_.orders[static_cast<size_t>(i)];
        }
        return e;
    }

    Int encode(const std::vector<Int>& e) const {
        Int x = 0;
        for (Int i = 0; i < m_; ++i)
            x = x * spec_.orders[static_cast<size_t>(i)] + e[static_cast<size_t>(i)];
        return x;
    }

    Int gen_index(Int g) const {
        std::vector<Int> e(static_cast<size_t>(m_), 0);
        e[static_cast<size_t>(g)] = 1;
        return encode(e);
    }

    const PolycyclicSpec& spec() const { return spec_; }

    /// Re-derives every defining relation through the collected multiplication.
    void verify_relations() const;

private:
    void check_tail(Int after, const std::vector<Int>& tail, Int context) const {
        if (tail.size() != static_cast<size_t>(m_))
            fail(Errc::BadSpec, "make_polycyclic: tail word length mismatch");
        for (Int i = 0; i <= after && i < m_; ++i)
            if (tail[static_cast<size_t>(i)] != 0)
                fail(Errc::InconsistentPresentation,
                     "make_polycyclic: tail of relation at generator " + std::to_string(context) +
                         " is not over strictly later generators");
    }

    // Collect a letter word into normal form by leftmost-violation rewriting.
    std::vector<Int> collect(std::deque<Int> word) const {
        std::int64_t steps = 0;
        for (;;) {
            if (++steps > 20000000)
                fail(Errc::InconsistentPresentation, "collection does not terminate");
            bool changed = false;
            for (size_t i = 0; i + 1 < word.size(); ++i) {
                Int u = word[i], v = word[i + 1];
                if (u > v) {
                    // u v -> v u [u, v]
                    word[i] = v;
                    word[i + 1] = u;
                    auto it = spec_.comm_tails.find({u, v});
                    if (it != spec_.comm_tails.end()) {
                        std::deque<Int> rest(word.begin() + static_cast<long>(i) + 2, word.end());
                        word.erase(word.begin() + static_cast<long>(i) + 2, word.end());
                        for (Int g = 0; g < m_; ++g)
                            for (Int c = 0; c < it->second[static_cast<size_t>(g)]; ++c)
                                word.push_back(g);
                        word.insert(word.end(), rest.begin(), rest.end());
                    }
                    changed = true;
                    break;
                }
                if (u == v) {
                    // fold a full run g^q -> power tail
                    Int q = spec_.orders[static_cast<size_t>(u)];
                    size_t run = 1;
                    while (i + run < word.size() && word[i + run] == u) ++run;
                    if (static_cast<Int>(run) >= q) {
                        std::deque<Int> rest(word.begin() + static_cast<long>(i + run), word.end());
                        word.erase(word.begin() + static_cast<long>(i), word.end());
                        for (Int extra = 0; extra < static_cast<Int>(run) - q; ++extra)
                            word.push_back(u);
                        auto it = spec_.power_tails.find(u);
                        if (it != spec_.power_tails.end())
                            for (Int g = 0; g < m_; ++g)
                                for (Int c = 0; c < it->second[static_cast<size_t>(g)]; ++c)
                                    word.push_back(g);
                        word.insert(word.end(), rest.begin(), rest.end());
                        changed = true;
                        break;
                    }
                    i += run - 1;
                }
            }
            if (!changed) break;
        }
        std::vector<Int> e(static_cast<size_t>(m_), 0);
        for (Int g : word) ++e[static_cast<size_t>(g)];
        return e;
    }

    void build_tables() {
        rmul_.assign(static_cast<size_t>(m_), std::vector<Int>(static_cast<size_t>(size_)));
        for (Int g = 0; g < m_; ++g) {
            for (Int x = 0; x < size_; ++x) {
                std::vector<Int> e = decode(x);
                std::deque<Int> word;
                for (Int i = 0; i < m_; ++i)
                    for (Int c = 0; c < e[static_cast<size_t>(i)]; ++c) word.push_back(i);
                word.push_back(g);
                rmul_[static_cast<size_t>(g)][static_cast<size_t>(x)] = encode(collect(std::move(word)));
            }
        }
    }

    PolycyclicSpec spec_;
    Int m_ = 0;
    Int size_ = 1;
    std::vector<std::vector<Int>> rmul_;
};

class QuotientImpl final : public GroupImpl {
public:
    QuotientImpl(std::shared_ptr<const GroupImpl> parent, std::vector<Int> rep_of,
                 std::vector<Int> coset_of, std::vector<Int> gens)
        : parent_(std::move(parent)),
          rep_of_(std::move(rep_of)),
          coset_of_(std::move(coset_of)),
          gens_(std::move(gens)) {}

    Int size() const override { return static_cast<Int>(rep_of_.size()); }

    Int mult(Int x, Int y) const override {
        Int px = rep_of_[static_cast<size_t>(x)];
        Int py = rep_of_[static_cast<size_t>(y)];
        return coset_of_[static_cast<size_t>(parent_->mult(px, py))];
    }

    Int inverse(Int x) const override {
        return coset_of_[static_cast<size_t>(parent_->inverse(rep_of_[static_cast<size_t>(x)]))];
    }

    std::vector<Int> generators() const override { return gens_; }

    std::string describe(Int x) const override {
        return parent_->describe(rep_of_[static_cast<size_t>(x)]) + "*N";
    }

private:
    std::shared_ptr<const GroupImpl> parent_;
    std::vector<Int> rep_of_;
    std::vector<Int> coset_of_;
    std::vector<Int> gens_;
};

}  // namespace

void PolycyclicImpl::verify_relations() const {
    Group g(std::shared_ptr<const GroupImpl>(this, [](const GroupImpl*) {}), "tmp");
    // power relations: g^q == tail
    for (Int i = 0; i < m_; ++i) {
        Int gi = gen_index(i);
        Int lhs = g.pow(gi, spec_.orders[static_cast<size_t>(i)]);
        std::vector<Int> tail(static_cast<size_t>(m_), 0);
        auto it = spec_.power_tails.find(i);
        if (it != spec_.power_tails.end()) tail = it->second;
        if (lhs != encode(tail))
            fail(Errc::InconsistentPresentation,
                 "power relation fails at generator " + spec_.names[static_cast<size_t>(i)]);
    }
    // commutator relations, including implicit trivial ones
    for (Int u = 0; u < m_; ++u)
        for (Int v = 0; v < u; ++v) {
            Int c = g.commutator(gen_index(u), gen_index(v));
            std::vector<Int> tail(static_cast<size_t>(m_), 0);
            auto it = spec_.comm_tails.find({u, v});
            if (it != spec_.comm_tails.end()) tail = it->second;
            if (c != encode(tail))
                fail(Errc::InconsistentPresentation,
                     "commutator relation fails at [" + spec_.names[static_cast<size_t>(u)] + "," +
                         spec_.names[static_cast<size_t>(v)] + "]");
        }
}

Group make_two_gen(const TwoGenParams& t) {
    return Group(std::make_shared<TwoGenImpl>(t), t.str());
}

Group make_metacyclic(Int n, Int p) {
    return Group(std::make_shared<MetacyclicImpl>(n, p),
                 "Lewis(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")");
}

Group make_abelian(const AbelianPType& t) {
    return Group(std::make_shared<AbelianImpl>(t), "Ab(" + t.str() + ")");
}

bool associativity_check(const Group& g, Int random_triples, unsigned seed) {
    const Int n = g.size();
    auto check = [&](Int x, Int y, Int z) {
        return g.mult(g.mult(x, y), z) == g.mult(x, g.mult(y, z));
    };
    if (n <= 81) {
        for (Int x = 0; x < n; ++x)
            for (Int y = 0; y < n; ++y)
                for (Int z = 0; z < n; ++z)
                    if (!check(x, y, z)) return false;
        return true;
    }
    for (Int x : g.generators())
        for (Int y : g.generators())
            for (Int z : g.generators())
                if (!check(x, y, z)) return false;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<Int> pick(0, n - 1);
    for (Int i = 0; i < random_triples; ++i)
        if (!check(pick(rng), pick(rng), pick(rng))) return false;
    return true;
}

Group make_polycyclic(const PolycyclicSpec& spec) {
    auto impl = std::make_shared<PolycyclicImpl>(spec);
    impl->verify_relations();
    Group g(impl, "Pc");
    if (!associativity_check(g, 100000))
        fail(Errc::InconsistentPresentation, "make_polycyclic: associativity check failed");
    return g;
}

PolycyclicSpec PolycyclicSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PolycyclicSpec spec;
    spec.names = j.at("generators").get<std::vector<std::string>>();
    spec.orders = j.at("orders").get<std::vector<Int>>();
    const Int m = static_cast<Int>(spec.names.size());
    auto index_of = [&](const std::string& name) -> Int {
        for (Int i = 0; i < m; ++i)
            if (spec.names[static_cast<size_t>(i)] == name) return i;
        fail(Errc::BadSpec, "polycyclic spec: unknown generator " + name);
    };
    if (j.contains("powers"))
        for (auto& [name, word] : j.at("powers").items())
            spec.power_tails[index_of(name)] = word.get<std::vector<Int>>();
    if (j.contains("commutators")) {
        for (auto& [key, word] : j.at("commutators").items()) {
            // key "[gi,gj]"
            if (key.size() < 5 || key.front() != '[' || key.back() != ']')
                fail(Errc::BadSpec, "polycyclic spec: bad commutator key " + key);
            auto comma = key.find(',');
            if (comma == std::string::npos) fail(Errc::BadSpec, "polycyclic spec: bad key " + key);
            Int u = index_of(key.substr(1, comma - 1));
            Int v = index_of(key.substr(comma + 1, key.size() - comma - 2));
            std::vector<Int> tail = word.get<std::vector<Int>>();
            if (u > v) {
                spec.comm_tails[{u, v}] = std::move(tail);
            } else if (v > u) {
                // [earlier, later] given: invert the tail. Only syntactic
                // single-generator tails invert without collection.
                Int nonzero = -1;
                for (Int i = 0; i < m; ++i)
                    if (tail[static_cast<size_t>(i)] != 0) {
                        if (nonzero >= 0)
                            fail(Errc::InconsistentPresentation,
                                 "polycyclic spec: cannot invert multi-generator tail for " + key);
                        nonzero = i;
                    }
                std::vector<Int> inv(static_cast<size_t>(m), 0);
                if (nonzero >= 0) {
                    Int q = spec.orders[static_cast<size_t>(nonzero)];
                    inv[static_cast<size_t>(nonzero)] =
                        (q - tail[static_cast<size_t>(nonzero)] % q) % q;
                }
                spec.comm_tails[{v, u}] = std::move(inv);
            } else {
                fail(Errc::BadSpec, "polycyclic spec: [g,g] key");
            }
        }
    }
    return spec;
}

std::string PolycyclicSpec::to_json() const {
    nlohmann::json j;
    j["generators"] = names;
    j["orders"] = orders;
    j["powers"] = nlohmann::json::object();
    for (const auto& [g, tail] : power_tails) j["powers"][names[static_cast<size_t>(g)]] = tail;
    j["commutators"] = nlohmann::json::object();
    for (const auto& [key, tail] : comm_tails)
        j["commutators"]["[" + names[static_cast<size_t>(key.first)] + "," +
                         names[static_cast<size_t>(key.second)] + "]"] = tail;
    return j.dump();
}

// ---- structure queries ----------------------------------------------------

Subgroup subgroup_generated(const Group& g, const std::vector<Int>& gens) {
    std::vector<char> seen(static_cast<size_t>(g.size()), 0);
    std::vector<Int> members{g.identity()};
    seen[static_cast<size_t>(g.identity())] = 1;
    std::deque<Int> todo{g.identity()};
    std::vector<Int> closure_gens;
    for (Int x : gens) {
        closure_gens.push_back(x);
        closure_gens.push_back(g.inv(x));
    }
    while (!todo.empty()) {
        Int x = todo.front();
        todo.pop_front();
        for (Int s : closure_gens) {
            Int y = g.mult(x, s);
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = 1;
                members.push_back(y);
                todo.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup{g.impl(), std::move(members), gens};
}

Subgroup whole_group(const Group& g) {
    std::vector<Int> all(static_cast<size_t>(g.size()));
    for (Int i = 0; i < g.size(); ++i) all[static_cast<size_t>(i)] = i;
    return Subgroup{g.impl(), std::move(all), g.generators()};
}

bool is_subgroup_normal(const Group& g, const Subgroup& h) {
    for (Int x : h.elements)
        for (Int s : g.generators())
            if (!h.contains(g.conj(x, s))) return false;
    return true;
}

bool is_normal_in(const Group& g, const Subgroup& h, const Subgroup& n) {
    for (Int x : n.elements)
        if (!h.contains(x)) return false;
    for (Int x : n.elements)
        for (Int s : h.witnesses)
            if (!n.contains(g.conj(x, s))) return false;
    return true;
}

ConjugacyClasses conjugacy_classes(const Group& g) {
    ConjugacyClasses cc;
    cc.class_of.assign(static_cast<size_t>(g.size()), -1);
    for (Int x = 0; x < g.size(); ++x) {
        if (cc.class_of[static_cast<size_t>(x)] >= 0) continue;
        Int id = cc.count();
        cc.reps.push_back(x);
        Int count = 0;
        std::deque<Int> todo{x};
        cc.class_of[static_cast<size_t>(x)] = id;
        ++count;
        while (!todo.empty()) {
            Int y = todo.front();
            todo.pop_front();
            for (Int s : g.generators()) {
                Int z = g.conj(y, s);
                if (cc.class_of[static_cast<size_t>(z)] < 0) {
                    cc.class_of[static_cast<size_t>(z)] = id;
                    ++count;
                    todo.push_back(z);
                }
            }
        }
        cc.sizes.push_back(count);
    }
    cc.inverse_class.resize(static_cast<size_t>(cc.count()));
    for (Int k = 0; k < cc.count(); ++k)
        cc.inverse_class[static_cast<size_t>(k)] =
            cc.class_of[static_cast<size_t>(g.inv(cc.reps[static_cast<size_t>(k)]))];
    return cc;
}

Subgroup center(const Group& g) {
    std::vector<Int> members;
    for (Int x = 0; x < g.size(); ++x) {
        bool central = true;
        for (Int s : g.generators())
            if (g.mult(x, s) != g.mult(s, x)) {
                central = false;
                break;
            }
        if (central) members.push_back(x);
    }
    std::sort(members.begin(), members.end());
    std::vector<Int> wit = members;  // fine at these sizes
    return Subgroup{g.impl(), std::move(members), std::move(wit)};
}

Subgroup derived_subgroup(const Group& g) {
    std::vector<Int> seeds;
    for (Int x : g.generators())
        for (Int y : g.generators()) seeds.push_back(g.commutator(x, y));
    Subgroup h = subgroup_generated(g, seeds);
    // normal closure
    for (;;) {
        std::vector<Int> extra;
        for (Int x : h.elements)
            for (Int s : g.generators()) {
                Int c = g.conj(x, s);
                if (!h.contains(c)) extra.push_back(c);
            }
        if (extra.empty()) break;
        std::vector<Int> gens = h.witnesses;
        gens.insert(gens.end(), extra.begin(), extra.end());
        h = subgroup_generated(g, gens);
    }
    return h;
}

Int nilpotency_class(const Group& g) {
    // lower central series via normal closures of [H, G]
    Subgroup h = derived_subgroup(g);
    Int cls = 1;
    while (h.order() > 1) {
        std::vector<Int> seeds;
        for (Int x : h.elements)
            for (Int s : g.generators()) seeds.push_back(g.commutator(x, s));
        Subgroup next = subgroup_generated(g, seeds);
        for (;;) {
            std::vector<Int> extra;
            for (Int x : next.elements)
                for (Int s : g.generators())
                    if (!next.contains(g.conj(x, s))) extra.push_back(g.conj(x, s));
            if (extra.empty()) break;
            std::vector<Int> gens = next.witnesses;
            gens.insert(gens.end(), extra.begin(), extra.end());
            next = subgroup_generated(g, gens);
        }
        if (next.order() >= h.order())
            fail(Errc::InconsistentPresentation, "nilpotency_class: series does not descend");
        h = next;
        ++cls;
        if (cls > 64) fail(Errc::InconsistentPresentation, "nilpotency_class: runaway");
    }
    return cls;
}

namespace {

AbelianPType census_type(const Group& g, const std::vector<Int>& elements, Int p,
                         const std::function<Int(Int, Int)>& power) {
    // s_j = log_p #{x : x^{p^j} = 1}; conjugate-partition back to the type
    const Int n = static_cast<Int>(elements.size());
    std::vector<Int> cum;
    cum.push_back(1);  // only the identity has order p^0
    Int covered = 1;
    Int j = 0;
    while (covered < n) {
        ++j;
        Int pj = ipow(p, j);
        Int cnt = 0;
        for (Int x : elements)
            if (power(x, pj) == g.identity()) ++cnt;
        cum.push_back(cnt);
        covered = cnt;
        if (j > 64) fail(Errc::NotPGroup, "census_type: runaway");
    }
    std::vector<Int> c;  // c_j = #parts >= j
    for (size_t i = 1; i < cum.size(); ++i) c.push_back(plog(p, cum[i] / cum[i - 1]));
    std::vector<Int> exps;
    for (Int jj = static_cast<Int>(c.size()); jj >= 1; --jj) {
        Int parts_ge_j = c[static_cast<size_t>(jj - 1)];
        Int parts_ge_j1 = jj < static_cast<Int>(c.size()) ? c[static_cast<size_t>(jj)] : 0;
        for (Int r = 0; r < parts_ge_j - parts_ge_j1; ++r) exps.push_back(jj);
    }
    return make_type(p, std::move(exps));
}

Int group_prime(Int order) {
    for (Int p = 2; p * p <= order; ++p)
        if (order % p == 0) return p;
    return order;
}

}  // namespace

AbelianPType abelian_type(const Group& g, const Subgroup& s) {
    for (Int x : s.witnesses)
        for (Int y : s.witnesses)
            if (g.mult(x, y) != g.mult(y, x)) fail(Errc::NotAbelian, "abelian_type: not abelian");
    if (s.order() == 1) return make_type(2, {});
    Int p = group_prime(s.order());
    (void)plog(p, s.order());
    return census_type(
        g, s.elements, p, [&](Int x, Int e) { return g.pow(x, e); });
}

QuotientGroup quotient_group(const Group& g, const Subgroup& h, const Subgroup& n) {
    if (!is_normal_in(g, h, n)) fail(Errc::NotNormal, "quotient_group: N not normal in H");
    QuotientGroup q;
    q.coset_of.assign(static_cast<size_t>(g.size()), -1);
    for (Int x : h.elements) {
        if (q.coset_of[static_cast<size_t>(x)] >= 0) continue;
        Int id = static_cast<Int>(q.rep_of.size());
        Int canonical = x;
        std::vector<Int> coset;
        for (Int m : n.elements) coset.push_back(g.mult(x, m));
        for (Int y : coset) canonical = std::min(canonical, y);
        q.rep_of.push_back(canonical);
        for (Int y : coset) q.coset_of[static_cast<size_t>(y)] = id;
    }
    // canonical rep of the identity coset must sit at index 0
    Int id_coset = q.coset_of[static_cast<size_t>(g.identity())];
    if (id_coset != 0) {
        // swap quotient indices 0 and id_coset
        std::swap(q.rep_of[0], q.rep_of[static_cast<size_t>(id_coset)]);
        for (auto& v : q.coset_of) {
            if (v == 0)
                v = id_coset;
            else if (v == id_coset)
                v = 0;
        }
    }
    std::vector<Int> qgens;
    for (Int w : h.witnesses) {
        Int img = q.coset_of[static_cast<size_t>(w)];
        if (img != 0 && std::find(qgens.begin(), qgens.end(), img) == qgens.end())
            qgens.push_back(img);
    }
    if (qgens.empty()) qgens.push_back(0);
    q.group = Group(std::make_shared<QuotientImpl>(g.impl(), q.rep_of, q.coset_of, qgens),
                    g.name() + "/N");
    return q;
}

AbelianPType quotient_type(const Group& g, const Subgroup& h, const Subgroup& n) {
    QuotientGroup q = quotient_group(g, h, n);
    return abelian_type(q.group, whole_group(q.group));
}

}  // namespace qga
