#include "relchern/fibration.hpp"

#include "relchern/errors.hpp"

namespace relchern {

HypersurfaceSpec HypersurfaceSpec::make(int degree, ChowPoly beta, BundleSpec bundle) {
    if (degree < 0) throw DomainError("hypersurface degree must be nonnegative");
    if (!same_ring(beta.ring(), bundle.ring())) throw ContextError("beta and the bundle live on different bases");
    if (!beta.is_homogeneous(1)) throw DomainError("beta must be a divisor class (homogeneous of codimension 1)");
    return HypersurfaceSpec(degree, std::move(beta), std::move(bundle));
}

ChowPoly HypersurfaceSpec::divisor_class(const std::string& hyperplane) const {
    const RingPtr ambient = ProjClass::ambient_ring(bundle_, hyperplane);
    return scale(ChowPoly::generator(ambient, hyperplane), degree_) + beta_.in_ring(ambient);
}

HypersurfaceSpec induced_hypersurface(const ZFamilySpec& spec, const BaseModel& base) {
    if (spec.n < 1) throw DomainError("Z family needs n >= 1");
    if (spec.base_dim != base.dim()) throw DomainError("Z family base_dim does not match the base");
    const ChowPoly l = base.divisor(spec.divisor);
    auto bundle = BundleSpec::make({{ChowPoly(base.ring()), 1}, {l, spec.n}});
    return HypersurfaceSpec::make(spec.d, scale(l, spec.d), std::move(bundle));
}

namespace {

// Expands the alpha(H) rational expression in the ring base + `variable`.
ChowPoly alpha_expression(const HypersurfaceSpec& hyp, const std::string& variable) {
    const BundleSpec& bundle = hyp.bundle();
    const RingPtr ambient = ProjClass::ambient_ring(bundle, variable);
    const ChowPoly one = ChowPoly::constant(ambient, 1);
    const ChowPoly h = ChowPoly::generator(ambient, variable);
    ChowPoly numerator = one;
    for (const auto& r : bundle.roots()) {
        numerator *= pow(one + h + r.root.in_ring(ambient), static_cast<unsigned>(r.multiplicity));
    }
    const ChowPoly y = hyp.divisor_class(variable);
    return expand_ratio(numerator * y, one + y);
}

Integer euler_poly_any(int n, int d) {
    // e_0 is the empty sum: a hypersurface in P^0 is empty.
    Integer sum = 0;
    for (int k = 0; k <= n - 1; ++k) {
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(k));
        Integer power;
        const Integer minus_d = -d;
        mpz_pow_ui(power.get_mpz_t(), minus_d.get_mpz_t(), static_cast<unsigned long>(n - k));
        sum += binom * power;
    }
    return -sum;
}

Integer int_pow(long base, int e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), static_cast<unsigned long>(e));
    if (base < 0 && e % 2 == 1) out = -out;
    return out;
}

void require_csm_degree(const ZFamilySpec& spec) {
    if (spec.d < 2) {
        throw UnsupportedDegreeError("the discriminant formulas need d >= 2, got d = " + std::to_string(spec.d));
    }
    if (spec.n < 1) throw DomainError("Z family needs n >= 1");
}

Rational as_rational(const Integer& z) { return Rational(z); }

} // namespace

ProjClass alpha_class(const HypersurfaceSpec& hyp) {
    return ProjClass::from_ambient(hyp.bundle(), alpha_expression(hyp, "H"));
}

ChowPoly q_class(const HypersurfaceSpec& hyp) { return pushforward_series(alpha_class(hyp)); }

ChowPoly q_class_direct(const HypersurfaceSpec& hyp) {
    const BundleSpec& bundle = hyp.bundle();
    if (!bundle.is_normalized()) throw DomainError("Q_d evaluation needs a normalized bundle");
    const int n = bundle.fiber_dim();

    // Roots other than one copy of 0, with multiplicity: the evaluation points -L_1..-L_n.
    std::vector<ChowPoly> points;
    for (const auto& r : bundle.roots()) {
        const int copies = r.root.is_zero() ? r.multiplicity - 1 : r.multiplicity;
        for (int k = 0; k < copies; ++k) points.push_back(-r.root);
    }

    const std::string t = "_t";
    const ProjClass series = ProjClass::from_ambient(bundle, alpha_expression(hyp, t), t);
    // (alpha(x) - alpha(0)) / x
    std::vector<ChowPoly> shifted;
    for (int k = 1; k < series.length(); ++k) shifted.push_back(series.coeff(k));

    std::vector<std::string> names;
    const RingPtr aux = formal_ring(bundle.ring(), n, names);
    const ChowPoly dd = divided_difference(shifted, names, aux);
    std::map<std::string, ChowPoly> images;
    for (int i = 0; i < n; ++i) {
        images.emplace(names[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(i)]);
    }
    return substitute_all(dd, images, bundle.ring());
}

ChowPoly relative_chern_class(const HypersurfaceSpec& hyp, const BaseModel& base) {
    if (!same_ring(hyp.bundle().ring(), base.ring())) throw ContextError("hypersurface is not defined over this base");
    return q_class(hyp) * chern_polynomial(base);
}

Integer hypersurface_euler_poly(int n, int d) {
    if (n < 1 || d < 1) throw DomainError("e_n(d) needs n >= 1 and d >= 1");
    return euler_poly_any(n, d);
}

ChowPoly z_family_q(const ZFamilySpec& spec) {
    return z_family_q(spec, BaseModel(FormalBase(spec.base_dim, {spec.divisor})));
}

ChowPoly z_family_q(const ZFamilySpec& spec, const BaseModel& base) {
    require_csm_degree(spec);
    if (spec.base_dim != base.dim()) throw DomainError("Z family base_dim does not match the base");
    const RingPtr& ring = base.ring();
    const ChowPoly dl = scale(base.divisor(spec.divisor), spec.d);
    const ChowPoly one = ChowPoly::constant(ring, 1);
    const Integer e_n = euler_poly_any(spec.n, spec.d);
    const Integer e_prev = euler_poly_any(spec.n - 1, spec.d);
    const ChowPoly numerator = ChowPoly::constant(ring, as_rational(e_n)) + scale(dl, as_rational(e_prev + 1));
    return expand_ratio(numerator, one + dl);
}

StratumData stratum_data(const ZFamilySpec& spec, const BaseModel& base) {
    require_csm_degree(spec);
    if (spec.base_dim != base.dim()) throw DomainError("Z family base_dim does not match the base");
    const int n = spec.n;
    const int d = spec.d;
    const RingPtr& ring = base.ring();
    const ChowPoly one = ChowPoly::constant(ring, 1);
    const ChowPoly l = base.divisor(spec.divisor);
    const ChowPoly f = scale(l, d - 1);
    const ChowPoly g = scale(l, d);
    const ChowPoly delta = scale(l, d * (d - 1));
    const ChowPoly c_x = chern_polynomial(base);

    // Isolated singular points with Milnor numbers (-1)^n (d-1)^{n-1} over Delta, (-1)^n (d-1)^n over C.
    const Integer sign = (n % 2 == 0) ? 1 : -1;
    const Integer e = euler_poly_any(n, d);

    const ChowPoly c_curve = c_x * expand_ratio(f * g, (one + f) * (one + g));
    const ChowPoly smooth_part = expand_ratio(delta, one + delta);
    const ChowPoly singular_part = expand_ratio(
        scale(f * g, (d - 2) * (d - 1)),
        (one + delta) * (one + delta + scale(f, 1 - d)) * (one + delta + scale(g, 2 - d)));
    const ChowPoly csm_delta = c_x * (smooth_part + singular_part);

    return StratumData{
        .chi_smooth = e,
        .chi_nodal = e + sign * int_pow(d - 1, n - 1),
        .chi_curve = e + sign * int_pow(d - 1, n),
        .discriminant = delta,
        .f_divisor = f,
        .g_divisor = g,
        .csm_discriminant = csm_delta,
        .chern_curve = c_curve,
    };
}

ChowPoly csm_route_z(const ZFamilySpec& spec, const BaseModel& base) {
    const StratumData s = stratum_data(spec, base);
    // phi_* 1 = chi(F0) 1_X + (chi(F1) - chi(F0)) 1_Delta + (chi(F2) - chi(F1)) 1_C
    return scale(chern_polynomial(base), as_rational(s.chi_smooth)) +
           scale(s.csm_discriminant, as_rational(s.chi_nodal - s.chi_smooth)) +
           scale(s.chern_curve, as_rational(s.chi_curve - s.chi_nodal));
}

EulerResult euler_characteristic(const HypersurfaceSpec& hyp, const BaseModel& base, EulerMode mode) {
    if (base.is_formal()) {
        if (mode == EulerMode::Integrate) {
            throw ModeError("cannot integrate over a formal base; use a projective-space base");
        }
        return base.apply_relations(component(relative_chern_class(hyp, base), base.dim()));
    }
    const Rational chi = integrate(base, relative_chern_class(hyp, base));
    if (chi.get_den() != 1) throw InvariantViolation("Euler characteristic is not an integer: " + chi.get_str());
    return Integer(chi.get_num());
}

std::vector<ChowPoly> svw_truncations(const HypersurfaceSpec& hyp, const BaseModel& base) {
    const ChowPoly c = base.apply_relations(relative_chern_class(hyp, base));
    std::vector<ChowPoly> out;
    for (int j = 1; j <= base.dim(); ++j) out.push_back(component(c, j));
    return out;
}

} // namespace relchern
