#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relchern/job.hpp"

using namespace relchern;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

int emit(const JobOutput& out) {
    std::cout << out.document;
    std::cerr << out.diagnostics;
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relative Chern classes of hypersurface fibrations"};
    std::string command;
    std::string config_path;
    std::string class_expr;
    std::string format_name;
    int trunc = -1;
    int n = 0;
    int d = 0;
    bool integrate = false;
    app.add_option("command", command, "push | euler | svw | qclass | csm-check | epoly")->required();
    app.add_option("--config", config_path, "JSON job file, or - for stdin");
    app.add_option("--class", class_expr, "class expression (push)");
    app.add_option("--format", format_name, "text | latex | json");
    app.add_option("--trunc", trunc, "truncation degree of a formal base")->check(CLI::NonNegativeNumber);
    app.add_option("--n", n, "fibre dimension of the Z-family")->check(CLI::PositiveNumber);
    app.add_option("--d", d, "hypersurface degree of the Z-family")->check(CLI::PositiveNumber);
    app.add_flag("--integrate", integrate, "euler: require an integer answer");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    OutputFormat format = OutputFormat::Text;
    nlohmann::json config = nlohmann::json::object();
    try {
        if (!format_name.empty()) format = parse_format(format_name);
        parse_command(command);
        if (!config_path.empty()) {
            try {
                config = nlohmann::json::parse(slurp(config_path));
            } catch (const nlohmann::json::parse_error& e) {
                throw ValidationError(std::string("config is not valid JSON: ") + e.what());
            }
            if (!config.is_object()) throw ValidationError("config must be a JSON object");
        }
        config["command"] = command;
        if (!format_name.empty()) config["format"] = format_name;
        if (!class_expr.empty()) config["class"] = class_expr;
        if (trunc >= 0) config["trunc"] = trunc;
        if (integrate) config["integrate"] = true;
        if (n > 0 || d > 0) {
            nlohmann::json z = config.value("zfamily", nlohmann::json::object());
            if (n > 0) z["n"] = n;
            if (d > 0) z["d"] = d;
            config["zfamily"] = z;
        }
        if (!format_name.empty()) format = parse_format(format_name);
        else if (config.contains("format") && config["format"].is_string()) {
            try { format = parse_format(config["format"].get<std::string>()); } catch (const Error&) {}
        }
    } catch (const std::exception& e) {
        JobOutput out;
        out.exit_code = exit_code_for(e);
        out.diagnostics = std::string("error: ") + e.what() + "\n";
        if (format == OutputFormat::Json) {
            out.document = nlohmann::json{{"error", {{"kind", "validation_error"}, {"message", e.what()}}}}.dump(2) + "\n";
        }
        return emit(out);
    }
    return emit(run_json(config, format));
}
