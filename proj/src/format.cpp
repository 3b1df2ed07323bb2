#include "relchern/format.hpp"

#include <map>
#include <regex>
#include <sstream>

#include "relchern/errors.hpp"

namespace relchern {

namespace {

std::string latex_symbol(const std::string& name) {
    static const std::regex indexed{R"(([A-Za-z]+)([0-9]+))"};
    std::smatch m;
    if (std::regex_match(name, m, indexed)) return m[1].str() + "_{" + m[2].str() + "}";
    std::string out;
    for (char c : name) {
        if (c == '_') out += "\\_";
        else out += c;
    }
    return out;
}

std::string latex_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

template <typename CoeffFn, typename MonoFn>
std::string render(const ChowPoly& p, CoeffFn coeff_str, MonoFn mono_str) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Rational magnitude = abs(c);
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            out << coeff_str(magnitude);
            continue;
        }
        if (magnitude != 1) out << coeff_str(magnitude);
        out << mono_str(m);
    }
    return out.str();
}

} // namespace

std::string render_rational(const Rational& q) { return q.get_str(); }

std::string render_text(const ChowPoly& p) {
    const Ring& ring = *p.ring();
    return render(p, [](const Rational& q) { return q.get_str(); },
                  [&](const Monomial& m) {
                      std::string s;
                      for (std::size_t i = 0; i < m.exps.size(); ++i) {
                          if (m.exps[i] == 0) continue;
                          if (!s.empty()) s += '*';
                          s += ring.symbol(i).name;
                          if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
                      }
                      return s;
                  });
}

std::string render_latex(const ChowPoly& p) {
    const Ring& ring = *p.ring();
    return render(p, latex_rational, [&](const Monomial& m) {
        std::string s;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            s += latex_symbol(ring.symbol(i).name);
            if (m.exps[i] > 1) s += "^{" + std::to_string(m.exps[i]) + "}";
        }
        return s;
    });
}

nlohmann::json class_to_json(const ChowPoly& p) {
    const Ring& ring = *p.ring();
    std::map<int, nlohmann::json> by_codim;
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json mono = nlohmann::json::object();
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] != 0) mono[ring.symbol(i).name] = m.exps[i];
        }
        nlohmann::json term = {
            {"monomial", std::move(mono)},
            {"coeff", {{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}}},
        };
        by_codim[m.weight].push_back(std::move(term));
    }
    nlohmann::json out = nlohmann::json::array();
    for (auto& [codim, terms] : by_codim) out.push_back({{"codim", codim}, {"terms", std::move(terms)}});
    return out;
}

ChowPoly class_from_json(const nlohmann::json& j, const RingPtr& ring) {
    if (!j.is_array()) throw DomainError("a class must be a JSON array of codimension groups");
    ChowPoly out(ring);
    for (const auto& group : j) {
        for (const auto& term : group.at("terms")) {
            const auto& coeff = term.at("coeff");
            Rational q(Integer(coeff.at("num").get<std::string>()), Integer(coeff.at("den").get<std::string>()));
            q.canonicalize();
            std::vector<std::pair<std::string, std::uint32_t>> powers;
            for (const auto& [name, e] : term.at("monomial").items()) powers.emplace_back(name, e.get<std::uint32_t>());
            out += ChowPoly::monomial(ring, q, powers);
        }
    }
    return out;
}

} // namespace relchern
