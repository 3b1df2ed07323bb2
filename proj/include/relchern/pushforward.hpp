#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relchern/chow_poly.hpp"

namespace relchern {

/// A Chern root (a linear class on the base) with its multiplicity.
struct BundleRoot {
    ChowPoly root;
    int multiplicity = 1;
};

/**
 * A vector bundle on the base described by its Chern roots.  Equal roots are merged
 * (multiplicities add), so the stored nonzero roots are pairwise distinct.
 *
 * The bundle is "normalized" when at least one root is zero; the closed-form
 * pushforward needs this, the series route does not.
 */
class BundleSpec {
public:
    /// Throws DomainError unless every root is homogeneous of weight 1 (or zero),
    /// every multiplicity is positive, and the rank is at least 2.
    static BundleSpec make(std::vector<BundleRoot> roots);

    const RingPtr& ring() const noexcept { return ring_; }
    int base_dim() const noexcept { return ring_->bound(); }
    int rank() const noexcept { return rank_; }
    /// Fiber dimension of P(E): rank - 1.
    int fiber_dim() const noexcept { return rank_ - 1; }

    /// All roots in input order (after merging), zero included.
    const std::vector<BundleRoot>& roots() const noexcept { return roots_; }
    /// L_1..L_m with multiplicities k_i + 1.
    std::vector<BundleRoot> nontrivial_roots() const;
    int zero_multiplicity() const;
    bool is_normalized() const { return zero_multiplicity() > 0; }

    /// c(E) = prod (1 + L_i)^{mult}.
    ChowPoly total_chern() const;

private:
    BundleSpec(RingPtr ring, std::vector<BundleRoot> roots, int rank)
        : ring_(std::move(ring)), roots_(std::move(roots)), rank_(rank) {}

    RingPtr ring_;
    std::vector<BundleRoot> roots_;
    int rank_;
};

/**
 * A class on P(E) written as alpha_0 + alpha_1 H + alpha_2 H^2 + ..., coefficients on
 * the base.  Powers of H beyond dim P(E) = base_dim + rank - 1 are dropped.
 */
class ProjClass {
public:
    ProjClass(BundleSpec bundle, std::vector<ChowPoly> coeffs);

    const BundleSpec& bundle() const noexcept { return bundle_; }
    const std::vector<ChowPoly>& coeffs() const noexcept { return coeffs_; }
    /// alpha_j, zero past the end.
    ChowPoly coeff(int j) const;
    int length() const noexcept { return static_cast<int>(coeffs_.size()); }

    /// The ring base + H in which this class is a single polynomial (bound = dim P(E)).
    static RingPtr ambient_ring(const BundleSpec& bundle, const std::string& hyperplane = "H");
    /// Split a polynomial in ambient_ring(bundle) by powers of H.
    static ProjClass from_ambient(const BundleSpec& bundle, const ChowPoly& poly,
                                  const std::string& hyperplane = "H");
    ChowPoly to_ambient(const std::string& hyperplane = "H") const;

private:
    BundleSpec bundle_;
    std::vector<ChowPoly> coeffs_;
};

/// Twists E by the inverse of its first root so that root becomes 0; H = H' - M_0.
std::pair<BundleSpec, ProjClass> normalize_twist(std::vector<BundleRoot> roots,
                                                  std::span<const ChowPoly> h_coeffs);

/// 1/c(E) expanded to the base dimension.
ChowPoly inverse_total_chern(const BundleSpec& bundle);

/// pi_*(H^power): zero below the fiber dimension n, else the codim (power - n) part of 1/c(E).
ChowPoly pushforward_power(const BundleSpec& bundle, int power);

/// pi_*(alpha) = sum_j alpha_j pi_*(H^j).
ChowPoly pushforward_series(const ProjClass& cls);

/**
 * Newton divided difference sum_i p(x_i) / prod_{l != i} (x_i - x_l) of the univariate
 * polynomial with coefficients `coeffs` (in the base ring), at the Formal symbols
 * `points` of `aux` (a ring containing the base symbols and the points).
 * Computed by the recursive difference-quotient table with exact division.
 */
ChowPoly divided_difference(std::span<const ChowPoly> coeffs, std::span<const std::string> points,
                            const RingPtr& aux);

/// Aux ring for the closed form: the base ring plus Formal symbols named `_x1`, `_x2`, ...
RingPtr formal_ring(const RingPtr& base, int count, std::vector<std::string>& names);

/// (1/k!) d^k/dx^k (x^k g), the single-variable factor of the operator D.
ChowPoly apply_d_factor(const ChowPoly& g, const std::string& x, unsigned k);

/// Closed-form pushforward: divided differences of sum_j alpha_{n+j} x^{m+j-1}, then the
/// operator D for repeated roots, then x_i = -L_i.  Requires a normalized bundle.
ChowPoly pushforward_closed_form(const ProjClass& cls);

} // namespace relchern
