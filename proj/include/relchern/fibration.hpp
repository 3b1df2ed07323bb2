#pragma once

#include <string>
#include <variant>
#include <vector>

#include "relchern/base_model.hpp"
#include "relchern/chow_poly.hpp"
#include "relchern/pushforward.hpp"

namespace relchern {

/// A hypersurface Y in P(E) with class [Y] = d H + pi^* beta.
class HypersurfaceSpec {
public:
    /// Throws DomainError if d < 0 or beta is not a divisor class on the bundle's base.
    static HypersurfaceSpec make(int degree, ChowPoly beta, BundleSpec bundle);

    int degree() const noexcept { return degree_; }
    const ChowPoly& beta() const noexcept { return beta_; }
    const BundleSpec& bundle() const noexcept { return bundle_; }

    /// [Y] in the ambient ring of the bundle.
    ChowPoly divisor_class(const std::string& hyperplane = "H") const;

private:
    HypersurfaceSpec(int degree, ChowPoly beta, BundleSpec bundle)
        : degree_(degree), beta_(std::move(beta)), bundle_(std::move(bundle)) {}

    int degree_;
    ChowPoly beta_;
    BundleSpec bundle_;
};

/// x_1^d + ... + x_n^d + f x_1 x_0^{d-1} + g x_0^d = 0 in P(O + L^{+n}).
struct ZFamilySpec {
    int n = 1;
    int d = 2;
    std::string divisor = "L";
    int base_dim = 0;
};

/// E = O + L^{+n}, beta = d L, on the given base.
HypersurfaceSpec induced_hypersurface(const ZFamilySpec& spec, const BaseModel& base);

/// Strata of the base by fiber type, for the Z family.
struct StratumData {
    Integer chi_smooth;   // chi(F0), fibers over X \ Delta
    Integer chi_nodal;    // chi(F1), fibers over Delta \ C
    Integer chi_curve;    // chi(F2), fibers over C = {f = g = 0}
    ChowPoly discriminant;
    ChowPoly f_divisor;
    ChowPoly g_divisor;
    ChowPoly csm_discriminant;
    ChowPoly chern_curve;
};

/// (1+H) prod (1+H+L_i) [Y] / (1+[Y]), truncated at dim P(E).
ProjClass alpha_class(const HypersurfaceSpec& hyp);

/// Q_d(E, beta) = pi_* alpha(H), by the series route.
ChowPoly q_class(const HypersurfaceSpec& hyp);

/// Q_d(E, beta) from sum_i (alpha(x_i) - alpha(0)) / (x_i prod_{l!=i}(x_i - x_l)) at x = -roots,
/// with alpha evaluated directly as a rational expression in x.  Needs a normalized bundle.
ChowPoly q_class_direct(const HypersurfaceSpec& hyp);

/// c(phi) = Q_d(E, beta) c(TX).
ChowPoly relative_chern_class(const HypersurfaceSpec& hyp, const BaseModel& base);

/// Euler characteristic of a smooth degree-d hypersurface in P^n.  Needs n, d >= 1.
Integer hypersurface_euler_poly(int n, int d);

/// (e_n(d) + (e_{n-1}(d) + 1) d L) / (1 + d L) in the ring {L} truncated at spec.base_dim.
ChowPoly z_family_q(const ZFamilySpec& spec);
/// Same, with L taken from `base`.
ChowPoly z_family_q(const ZFamilySpec& spec, const BaseModel& base);

StratumData stratum_data(const ZFamilySpec& spec, const BaseModel& base);

/// c(phi) for the Z family from the constructible-function pushforward over the strata.
ChowPoly csm_route_z(const ZFamilySpec& spec, const BaseModel& base);

enum class EulerMode {
    /// Integer on P^m, symbolic codim-dim class on a formal base.
    Auto,
    /// Always integrate; ModeError on a formal base.
    Integrate,
};

using EulerResult = std::variant<Integer, ChowPoly>;

EulerResult euler_characteristic(const HypersurfaceSpec& hyp, const BaseModel& base, EulerMode mode = EulerMode::Auto);

/// Components of c(phi) in codimension 1..dim X (render relations applied).
std::vector<ChowPoly> svw_truncations(const HypersurfaceSpec& hyp, const BaseModel& base);

} // namespace relchern
