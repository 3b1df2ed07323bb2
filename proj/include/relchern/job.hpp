#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relchern/base_model.hpp"
#include "relchern/errors.hpp"
#include "relchern/fibration.hpp"

namespace relchern {

/// Malformed job configuration (exit status 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

enum class Command { Push, Euler, Svw, QClass, CsmCheck, EPoly };
enum class OutputFormat { Text, Latex, Json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);
Command parse_command(const std::string& s);
OutputFormat parse_format(const std::string& s);

struct BaseDescriptor {
    enum class Kind { Formal, Projective };
    Kind kind = Kind::Formal;
    int dim = 0;
    /// Formal: "c1" selects the Fano convention L = c1.  Projective: L = l_multiple * h.
    bool fano = false;
    std::optional<int> l_multiple;
};

struct RootDescriptor {
    std::map<std::string, long> terms;  // divisor symbol -> integer coefficient
    int multiplicity = 1;
};

struct HypersurfaceDescriptor {
    int degree = 0;
    std::map<std::string, long> beta;
};

struct ZFamilyDescriptor {
    int n = 1;
    int d = 2;
};

/**
 * One CLI job.  JSON layout:
 *
 *   { "command": "euler", "format": "json",
 *     "base": {"kind": "projective", "dim": 3, "L": 4},        // formal: {"kind": "formal", "dim": 3, "L": "c1"}
 *     "bundle": {"roots": [{"terms": {}, "mult": 1}, {"terms": {"L": 2}}, {"terms": {"L": 3}}]},
 *     "hypersurface": {"degree": 3, "beta": {"L": 6}},
 *     "zfamily": {"n": 2, "d": 3},                             // csm-check, epoly
 *     "class": "H^2", "trunc": 6, "integrate": true }
 */
struct JobConfig {
    Command command = Command::QClass;
    OutputFormat format = OutputFormat::Text;
    std::optional<BaseDescriptor> base;
    std::optional<std::vector<RootDescriptor>> bundle;
    std::optional<HypersurfaceDescriptor> hypersurface;
    std::optional<ZFamilyDescriptor> zfamily;
    std::optional<std::string> class_expr;
    std::optional<int> trunc;
    bool integrate = false;
};

/// Throws ValidationError on missing or ill-typed fields.
JobConfig job_config_from_json(const nlohmann::json& j);
nlohmann::json job_config_to_json(const JobConfig& config);

/// Builds the base model (formal bases pick up every divisor symbol the job mentions).
BaseModel make_base(const JobConfig& config);
BundleSpec make_bundle(const JobConfig& config, const BaseModel& base);
HypersurfaceSpec make_hypersurface(const JobConfig& config, const BaseModel& base);

struct JobOutput {
    int exit_code = 0;
    std::string document;  // stdout payload
    std::string diagnostics;  // stderr payload
};

/// Exit codes: 0 success, 2 parse/validation error, 3 mode error, 1 internal error.
int exit_code_for(const std::exception& e);

/// Runs the job; never throws.  In json mode failures become {"error": {...}}.
JobOutput run(const JobConfig& config);

/// Parses then runs; a config that fails validation is reported in `fallback_format`.
JobOutput run_json(const nlohmann::json& config, OutputFormat fallback_format = OutputFormat::Text);

} // namespace relchern
