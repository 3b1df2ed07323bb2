#pragma once

#include <string>

#include <json.hpp>

#include "relchern/chow_poly.hpp"

namespace relchern {

/// "12L - 72L^2 + 432L^3": ascending codimension, canonical monomial order, coefficient
/// juxtaposed with the monomial, symbols joined by '*'.  Re-parses to the same class.
std::string render_text(const ChowPoly& p);

/// "12L - 72L^{2} + 432L^{3}", with c1 -> c_{1} and rational coefficients as \frac.
std::string render_latex(const ChowPoly& p);

std::string render_rational(const Rational& q);

/// [{codim, terms: [{monomial: {symbol: exponent}, coeff: {num, den}}]}] for each nonempty codim.
nlohmann::json class_to_json(const ChowPoly& p);
ChowPoly class_from_json(const nlohmann::json& j, const RingPtr& ring);

} // namespace relchern
