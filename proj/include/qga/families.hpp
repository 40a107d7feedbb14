#pragma once

#include <optional>

#include "qga/decomp.hpp"

namespace qga {

/// Parameter 5-tuple (alpha, beta, gamma; rho, sigma) of a two-generator
/// p-group of class 2 and order p^{alpha+beta+gamma}.
struct TwoGenParams {
    Int p = 3;
    Int alpha = 1, beta = 1, gamma = 1;
    Int rho = 0, sigma = 0;

    Int n() const { return alpha + beta + gamma; }
    std::string str() const;
};

/// Which tau subset a p-good tuple belongs to.
enum class TauClass { Tau1, Tau2, Tau3, Tau4, Tau5, Invalid };

const char* tau_name(TauClass c);

/// Basic tau_n membership: alpha >= beta >= gamma >= 1, 0 <= rho,sigma <= gamma.
bool in_tau(const TwoGenParams& t);

/// The unique tau subset containing the tuple, or Invalid. Total.
TauClass validate_p_good(const TwoGenParams& t);

/// Center type from the classification display (both rho/sigma branches).
AbelianPType two_gen_center_type(const TwoGenParams& t);

/// NestedGVZData for G_{(alpha,beta,gamma;rho,sigma)} with the quotient types
/// computed by Smith normal form over the relation lattice of
/// <a^{p^delta}, b^{p^delta}, [a,b]> modulo <[a,b]^{p^e}>.
NestedGVZData two_gen_gvz_data(const TwoGenParams& t);

/// Relation matrix for the layer quotient (exposed for tests).
RelationMatrix two_gen_layer_relations(const TwoGenParams& t, Int delta, Int killed_exp);

/// decompose_nested_gvz over two_gen_gvz_data.
WeddDecomp two_gen_decompose(const TwoGenParams& t);

/// Closed form for tuples in tau_{n5}; throws NotTau5 otherwise.
WeddDecomp closed_form_tau5(const TwoGenParams& t);

/// Nenciu family (order p^{2n+1}, exponent p, class n+1); requires p > n+1.
NestedGVZData nenciu_gvz_data(Int n, Int p);
WeddDecomp closed_form_nenciu(Int n, Int p);

/// Lewis metacyclic family (order p^{2n+1}, exponent p^{n+1}, class n+1), p odd.
NestedGVZData lewis_gvz_data(Int n, Int p);
WeddDecomp closed_form_lewis(Int n, Int p);

/// Input for the order-p^5 theorem.
struct P5Input {
    Int p = 3;
    Int nilpotency_class = 2;  // 2 or 3
    AbelianPType abelianization;
    // class-2 groups carry full VZ data:
    AbelianPType center;
    AbelianPType center_mod_derived;
    Int center_index_sqrt = 1;
};

WeddDecomp p5_decompose(const P5Input& input);

}  // namespace qga
