#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qga/abelian.hpp"
#include "qga/families.hpp"

namespace qga {

/// Elements are indices in [0, size()). Index 0 is always the identity.
class GroupImpl {
public:
    virtual ~GroupImpl() = default;
    virtual Int size() const = 0;
    virtual Int mult(Int x, Int y) const = 0;
    virtual Int inverse(Int x) const = 0;
    virtual std::vector<Int> generators() const = 0;
    virtual std::string describe(Int x) const;
};

/// Immutable handle with cached inverses and element orders.
class Group {
public:
    Group() = default;
    explicit Group(std::shared_ptr<const GroupImpl> impl, std::string name = "G");

    Int size() const { return impl_->size(); }
    Int identity() const { return 0; }
    Int mult(Int x, Int y) const { return impl_->mult(x, y); }
    Int inv(Int x) const { return inverses_->at(static_cast<size_t>(x)); }
    Int pow(Int x, Int e) const;
    Int conj(Int x, Int g) const { return mult(mult(inv(g), x), g); }  // g^-1 x g
    Int commutator(Int x, Int y) const;                                // [x,y] = x^-1 y^-1 x y
    Int order_of(Int x) const;
    Int exponent() const;  // lcm of element orders
    const std::vector<Int>& generators() const { return gens_; }
    std::string describe(Int x) const { return impl_->describe(x); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::shared_ptr<const GroupImpl>& impl() const { return impl_; }

    bool same_group(const Group& o) const { return impl_ == o.impl_; }

private:
    std::shared_ptr<const GroupImpl> impl_;
    std::shared_ptr<const std::vector<Int>> inverses_;
    std::vector<Int> gens_;
    std::string name_ = "G";
};

struct Subgroup {
    std::shared_ptr<const GroupImpl> parent;
    std::vector<Int> elements;    // sorted, contains identity
    std::vector<Int> witnesses;   // generator witnesses

    Int order() const { return static_cast<Int>(elements.size()); }
    bool contains(Int x) const;
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

struct ConjugacyClasses {
    std::vector<Int> reps;              // class representatives
    std::vector<Int> sizes;             // class sizes
    std::vector<Int> class_of;          // element index -> class index
    std::vector<Int> inverse_class;     // class index of inverses
    Int count() const { return static_cast<Int>(reps.size()); }
};

// ---- constructors -------------------------------------------------------

/// G_{(alpha,beta,gamma;rho,sigma)}: normal form a^i b^j c^k, c = [a,b].
Group make_two_gen(const TwoGenParams& t);

/// <x, y : x^{p^{n+1}} = y^{p^n} = 1, y^-1 x y = x^{1+p}>.
Group make_metacyclic(Int n, Int p);

Group make_abelian(const AbelianPType& t);

/// Triangular power-commutator presentation. Collection from the left.
struct PolycyclicSpec {
    std::vector<std::string> names;
    std::vector<Int> orders;                       // p-power generator orders
    std::map<Int, std::vector<Int>> power_tails;   // gen -> exponent vector over later gens
    /// key (u, v) with u > v: [g_u, g_v] as exponent vector over gens > u.
    std::map<std::pair<Int, Int>, std::vector<Int>> comm_tails;

    static PolycyclicSpec from_json(const std::string& text);
    std::string to_json() const;
};

/// Validates the presentation: relations re-derived, associativity sampled
/// (exhaustive up to order 81, >= 1e5 random triples above).
Group make_polycyclic(const PolycyclicSpec& spec);

// ---- structure queries ---------------------------------------------------

Subgroup subgroup_generated(const Group& g, const std::vector<Int>& gens);
Subgroup whole_group(const Group& g);
bool is_subgroup_normal(const Group& g, const Subgroup& h);
/// n normal in h (conjugation by h's witnesses).
bool is_normal_in(const Group& g, const Subgroup& h, const Subgroup& n);

ConjugacyClasses conjugacy_classes(const Group& g);
Subgroup center(const Group& g);
Subgroup derived_subgroup(const Group& g);
Int nilpotency_class(const Group& g);

/// Element-order census match; rejects non-abelian inputs (NotAbelian).
AbelianPType abelian_type(const Group& g, const Subgroup& s);

/// Type of the abelian quotient H/N (NotNormal / NotAbelian).
AbelianPType quotient_type(const Group& g, const Subgroup& h, const Subgroup& n);

/// Concrete quotient group H/N with canonical coset representatives.
/// coset_of maps parent element indices (for elements of H) to quotient indices.
struct QuotientGroup {
    Group group;
    std::vector<Int> coset_of;    // parent index -> quotient index, -1 outside H
    std::vector<Int> rep_of;      // quotient index -> canonical parent element
};
QuotientGroup quotient_group(const Group& g, const Subgroup& h, const Subgroup& n);

/// Associativity spot-check used by the validation suites.
bool associativity_check(const Group& g, Int random_triples, unsigned seed = 12345);

}  // namespace qga
