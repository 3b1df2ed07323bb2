#include "relchern/job.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relchern/expr.hpp"
#include "relchern/format.hpp"
#include "relchern/pushforward.hpp"

namespace relchern {

using nlohmann::json;

namespace {

const std::map<std::string, Command> kCommands = {
    {"push", Command::Push},     {"euler", Command::Euler},         {"svw", Command::Svw},
    {"qclass", Command::QClass}, {"csm-check", Command::CsmCheck}, {"epoly", Command::EPoly},
};

const std::map<std::string, OutputFormat> kFormats = {
    {"text", OutputFormat::Text}, {"latex", OutputFormat::Latex}, {"json", OutputFormat::Json}};

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.contains(key)) throw ValidationError("unknown key '" + key + "' in " + where);
    }
}

int get_int(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + " is missing '" + key + "'");
    if (!j.at(key).is_number_integer()) throw ValidationError(where + "." + key + " must be an integer");
    return j.at(key).get<int>();
}

std::map<std::string, long> get_terms(const json& j, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + " must map divisor symbols to integers");
    std::map<std::string, long> out;
    for (const auto& [name, v] : j.items()) {
        if (!v.is_number_integer()) throw ValidationError(where + "." + name + " must be an integer");
        out[name] = v.get<long>();
    }
    return out;
}

json terms_to_json(const std::map<std::string, long>& terms) {
    json j = json::object();
    for (const auto& [k, v] : terms) j[k] = v;
    return j;
}

BaseDescriptor parse_base(const json& j) {
    require_keys(j, "base", {"kind", "dim", "L"});
    BaseDescriptor b;
    const std::string kind = j.value("kind", "formal");
    if (kind == "formal") b.kind = BaseDescriptor::Kind::Formal;
    else if (kind == "projective") b.kind = BaseDescriptor::Kind::Projective;
    else throw ValidationError("base.kind must be 'formal' or 'projective'");
    b.dim = get_int(j, "dim", "base");
    if (b.dim < 0) throw ValidationError("base.dim must be nonnegative");
    if (j.contains("L")) {
        const auto& l = j.at("L");
        if (b.kind == BaseDescriptor::Kind::Formal) {
            if (!l.is_string() || l.get<std::string>() != "c1") {
                throw ValidationError("on a formal base, base.L may only be \"c1\" (Fano convention)");
            }
            b.fano = true;
        } else {
            if (!l.is_number_integer()) throw ValidationError("on a projective base, base.L must be an integer multiple of h");
            b.l_multiple = l.get<int>();
        }
    }
    return b;
}

std::set<std::string> mentioned_divisors(const JobConfig& c) {
    std::set<std::string> names;
    if (c.bundle) {
        for (const auto& r : *c.bundle) {
            for (const auto& [k, v] : r.terms) names.insert(k);
        }
    }
    if (c.hypersurface) {
        for (const auto& [k, v] : c.hypersurface->beta) names.insert(k);
    }
    return names;
}

ChowPoly linear_form(const std::map<std::string, long>& terms, const BaseModel& base) {
    ChowPoly out(base.ring());
    for (const auto& [name, coeff] : terms) {
        if (coeff != 0) out += scale(base.divisor(name), Rational(coeff));
    }
    return out;
}

std::string render(const ChowPoly& p, OutputFormat f) {
    return f == OutputFormat::Latex ? render_latex(p) : render_text(p);
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
    if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
    if (dynamic_cast<const ModeError*>(&e)) return "mode_error";
    if (dynamic_cast<const SymbolError*>(&e)) return "symbol_error";
    if (dynamic_cast<const NonUnitError*>(&e)) return "non_unit_error";
    if (dynamic_cast<const UnsupportedDegreeError*>(&e)) return "unsupported_degree";
    if (dynamic_cast<const SpecializationError*>(&e)) return "specialization_error";
    if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
    if (dynamic_cast<const ContextError*>(&e)) return "context_error";
    if (dynamic_cast<const RangeError*>(&e)) return "range_error";
    if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant_violation";
    return "internal_error";
}

const BaseDescriptor& need_base(const JobConfig& c) {
    if (!c.base) throw ValidationError("command '" + to_string(c.command) + "' needs a 'base'");
    return *c.base;
}

ZFamilySpec need_zfamily(const JobConfig& c, int base_dim) {
    if (!c.zfamily) throw ValidationError("command '" + to_string(c.command) + "' needs 'zfamily' {n, d}");
    return ZFamilySpec{c.zfamily->n, c.zfamily->d, "L", base_dim};
}

struct Rendered {
    std::string text;
    json doc;
};

Rendered run_push(const JobConfig& c, const BaseModel& base) {
    if (!c.class_expr) throw ValidationError("command 'push' needs a 'class' expression");
    const BundleSpec bundle = make_bundle(c, base);
    const ExprPtr expr = parse_class_expr(*c.class_expr);
    const ChowPoly ambient = evaluate(*expr, ProjClass::ambient_ring(bundle));
    const ProjClass cls = ProjClass::from_ambient(bundle, ambient);
    const ChowPoly series = pushforward_series(cls);

    std::vector<BundleRoot> roots = bundle.roots();
    const auto [normal_bundle, normal_cls] = normalize_twist(std::move(roots), cls.coeffs());
    const ChowPoly closed = pushforward_closed_form(normal_cls);
    if (closed != series) throw InvariantViolation("closed-form and series pushforwards disagree");

    const ChowPoly shown = base.apply_relations(series);
    return {render(shown, c.format), json{{"class", class_to_json(shown)}, {"routes_agree", true}}};
}

Rendered run_euler(const JobConfig& c, const BaseModel& base) {
    const auto hyp = make_hypersurface(c, base);
    const EulerResult r = euler_characteristic(hyp, base, c.integrate ? EulerMode::Integrate : EulerMode::Auto);
    if (const auto* chi = std::get_if<Integer>(&r)) return {chi->get_str(), json{{"integer", chi->get_str()}}};
    const auto& cls = std::get<ChowPoly>(r);
    return {render(cls, c.format), json{{"class", class_to_json(cls)}}};
}

Rendered run_svw(const JobConfig& c, const BaseModel& base) {
    const auto parts = svw_truncations(make_hypersurface(c, base), base);
    std::ostringstream text;
    json components = json::array();
    for (std::size_t j = 0; j < parts.size(); ++j) {
        if (j) text << '\n';
        text << "codim " << j + 1 << ": " << render(parts[j], c.format);
        components.push_back({{"codim", j + 1}, {"class", class_to_json(parts[j])}});
    }
    return {text.str(), json{{"components", std::move(components)}}};
}

Rendered run_qclass(const JobConfig& c, const BaseModel& base) {
    const ChowPoly q = base.apply_relations(q_class(make_hypersurface(c, base)));
    return {render(q, c.format), json{{"class", class_to_json(q)}}};
}

Rendered run_csm_check(const JobConfig& c, const BaseModel& base) {
    const ZFamilySpec spec = need_zfamily(c, base.dim());
    const ChowPoly pushed = relative_chern_class(induced_hypersurface(spec, base), base);
    const ChowPoly csm = csm_route_z(spec, base);
    if (pushed == csm) {
        return {"EQUAL", json{{"status", "EQUAL"}, {"class", class_to_json(pushed)}}};
    }
    std::ostringstream text;
    text << "DIFFER";
    json diff = json::array();
    for (int k = 0; k <= base.dim(); ++k) {
        const ChowPoly a = component(pushed, k);
        const ChowPoly b = component(csm, k);
        if (a == b) continue;
        text << "\ncodim " << k << ": pushforward = " << render(a, c.format) << ", csm = " << render(b, c.format);
        diff.push_back({{"codim", k}, {"pushforward", class_to_json(a)}, {"csm", class_to_json(b)}});
    }
    return {text.str(), json{{"status", "DIFFER"}, {"diff", std::move(diff)}}};
}

Rendered run_epoly(const JobConfig& c) {
    if (!c.zfamily) throw ValidationError("command 'epoly' needs 'zfamily' {n, d}");
    const Integer e = hypersurface_euler_poly(c.zfamily->n, c.zfamily->d);
    return {e.get_str(), json{{"integer", e.get_str()}}};
}

JobOutput failure(const std::exception& e, OutputFormat format) {
    JobOutput out;
    out.exit_code = exit_code_for(e);
    const std::string kind = error_kind(e);
    out.diagnostics = "error (" + kind + "): " + e.what() + "\n";
    if (format == OutputFormat::Json) {
        json err = {{"kind", kind}, {"message", e.what()}};
        if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
            err["message"] = pe->message();
            err["line"] = pe->line();
            err["column"] = pe->column();
        }
        out.document = json{{"error", std::move(err)}}.dump(2) + "\n";
    }
    return out;
}

} // namespace

std::string to_string(Command c) {
    for (const auto& [name, value] : kCommands) {
        if (value == c) return name;
    }
    return "?";
}

std::string to_string(OutputFormat f) {
    for (const auto& [name, value] : kFormats) {
        if (value == f) return name;
    }
    return "?";
}

Command parse_command(const std::string& s) {
    auto it = kCommands.find(s);
    if (it == kCommands.end()) throw ValidationError("unknown command '" + s + "'");
    return it->second;
}

OutputFormat parse_format(const std::string& s) {
    auto it = kFormats.find(s);
    if (it == kFormats.end()) throw ValidationError("unknown format '" + s + "' (expected text, latex or json)");
    return it->second;
}

JobConfig job_config_from_json(const json& j) {
    try {
        require_keys(j, "config",
                     {"command", "format", "base", "bundle", "hypersurface", "zfamily", "class", "trunc", "integrate"});
        JobConfig c;
        if (!j.contains("command") || !j.at("command").is_string()) throw ValidationError("config needs a 'command' string");
        c.command = parse_command(j.at("command").get<std::string>());
        if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("base")) c.base = parse_base(j.at("base"));
        if (j.contains("bundle")) {
            const auto& b = j.at("bundle");
            require_keys(b, "bundle", {"roots"});
            if (!b.contains("roots") || !b.at("roots").is_array()) throw ValidationError("bundle.roots must be an array");
            std::vector<RootDescriptor> roots;
            for (const auto& r : b.at("roots")) {
                require_keys(r, "bundle root", {"terms", "mult"});
                RootDescriptor rd;
                rd.terms = get_terms(r.value("terms", json::object()), "root.terms");
                rd.multiplicity = r.contains("mult") ? get_int(r, "mult", "root") : 1;
                if (rd.multiplicity < 1) throw ValidationError("root multiplicities must be positive");
                roots.push_back(std::move(rd));
            }
            c.bundle = std::move(roots);
        }
        if (j.contains("hypersurface")) {
            const auto& h = j.at("hypersurface");
            require_keys(h, "hypersurface", {"degree", "beta"});
            HypersurfaceDescriptor hd;
            hd.degree = get_int(h, "degree", "hypersurface");
            hd.beta = get_terms(h.value("beta", json::object()), "hypersurface.beta");
            c.hypersurface = std::move(hd);
        }
        if (j.contains("zfamily")) {
            const auto& z = j.at("zfamily");
            require_keys(z, "zfamily", {"n", "d"});
            c.zfamily = ZFamilyDescriptor{get_int(z, "n", "zfamily"), get_int(z, "d", "zfamily")};
        }
        if (j.contains("class")) {
            if (!j.at("class").is_string()) throw ValidationError("'class' must be an expression string");
            c.class_expr = j.at("class").get<std::string>();
        }
        if (j.contains("trunc")) {
            c.trunc = get_int(j, "trunc", "config");
            if (*c.trunc < 0) throw ValidationError("trunc must be nonnegative");
        }
        if (j.contains("integrate")) {
            if (!j.at("integrate").is_boolean()) throw ValidationError("'integrate' must be a boolean");
            c.integrate = j.at("integrate").get<bool>();
        }
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed config: ") + e.what());
    }
}

json job_config_to_json(const JobConfig& c) {
    json j = {{"command", to_string(c.command)}, {"format", to_string(c.format)}};
    if (c.base) {
        json b = {{"kind", c.base->kind == BaseDescriptor::Kind::Formal ? "formal" : "projective"}, {"dim", c.base->dim}};
        if (c.base->fano) b["L"] = "c1";
        if (c.base->l_multiple) b["L"] = *c.base->l_multiple;
        j["base"] = std::move(b);
    }
    if (c.bundle) {
        json roots = json::array();
        for (const auto& r : *c.bundle) roots.push_back({{"terms", terms_to_json(r.terms)}, {"mult", r.multiplicity}});
        j["bundle"] = {{"roots", std::move(roots)}};
    }
    if (c.hypersurface) {
        j["hypersurface"] = {{"degree", c.hypersurface->degree}, {"beta", terms_to_json(c.hypersurface->beta)}};
    }
    if (c.zfamily) j["zfamily"] = {{"n", c.zfamily->n}, {"d", c.zfamily->d}};
    if (c.class_expr) j["class"] = *c.class_expr;
    if (c.trunc) j["trunc"] = *c.trunc;
    if (c.integrate) j["integrate"] = true;
    return j;
}

BaseModel make_base(const JobConfig& c) {
    const BaseDescriptor& b = need_base(c);
    if (b.kind == BaseDescriptor::Kind::Projective) {
        if (c.trunc) throw ValidationError("trunc cannot override the dimension of a projective-space base");
        std::map<std::string, int> bindings;
        if (b.l_multiple) bindings["L"] = *b.l_multiple;
        return BaseModel(ProjectiveSpaceBase(b.dim, std::move(bindings)));
    }
    const int dim = c.trunc.value_or(b.dim);
    std::vector<std::string> divisors;
    for (const auto& name : mentioned_divisors(c)) {
        bool chern = name.size() > 1 && name[0] == 'c' && name.find_first_not_of("0123456789", 1) == std::string::npos;
        if (!chern) divisors.push_back(name);
    }
    if (divisors.empty() || (b.fano && std::find(divisors.begin(), divisors.end(), "L") == divisors.end())) {
        divisors.push_back("L");
    }
    return BaseModel(FormalBase(dim, std::move(divisors), b.fano));
}

BundleSpec make_bundle(const JobConfig& c, const BaseModel& base) {
    if (!c.bundle) throw ValidationError("command '" + to_string(c.command) + "' needs a 'bundle'");
    std::vector<BundleRoot> roots;
    for (const auto& r : *c.bundle) roots.push_back({linear_form(r.terms, base), r.multiplicity});
    return BundleSpec::make(std::move(roots));
}

HypersurfaceSpec make_hypersurface(const JobConfig& c, const BaseModel& base) {
    if (!c.hypersurface) throw ValidationError("command '" + to_string(c.command) + "' needs a 'hypersurface'");
    return HypersurfaceSpec::make(c.hypersurface->degree, linear_form(c.hypersurface->beta, base), make_bundle(c, base));
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ModeError*>(&e)) return 3;
    if (dynamic_cast<const InvariantViolation*>(&e)) return 1;
    if (dynamic_cast<const Error*>(&e)) return 2;
    return 1;
}

JobOutput run(const JobConfig& c) {
    try {
        Rendered r;
        if (c.command == Command::EPoly) {
            r = run_epoly(c);
        } else {
            const BaseModel base = make_base(c);
            switch (c.command) {
            case Command::Push: r = run_push(c, base); break;
            case Command::Euler: r = run_euler(c, base); break;
            case Command::Svw: r = run_svw(c, base); break;
            case Command::QClass: r = run_qclass(c, base); break;
            case Command::CsmCheck: r = run_csm_check(c, base); break;
            case Command::EPoly: break;
            }
        }
        JobOutput out;
        if (c.format == OutputFormat::Json) {
            json doc = {{"command", to_string(c.command)}, {"result", std::move(r.doc)}};
            out.document = doc.dump(2) + "\n";
        } else {
            out.document = r.text + "\n";
        }
        return out;
    } catch (const std::exception& e) {
        return failure(e, c.format);
    }
}

JobOutput run_json(const json& config, OutputFormat fallback_format) {
    JobConfig c;
    try {
        c = job_config_from_json(config);
    } catch (const std::exception& e) {
        return failure(e, fallback_format);
    }
    return run(c);
}

} // namespace relchern
