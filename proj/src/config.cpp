#include "rgtv/config.hpp"

#include <charconv>
#include <sstream>

#include "rgtv/errors.hpp"
#include "rgtv/io.hpp"

namespace rgtv {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, int line) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config line " + std::to_string(line) + ": bad value for " + key + ": '" + value + "'");
    return out;
}

}  // namespace

SolverParams parse_config(const std::string& text, SolverParams p) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));

        if (key == "sigma") p.sigma = parse_number<double>(key, val, line);
        else if (key == "lambda0") p.lambda0 = parse_number<double>(key, val, line);
        else if (key == "mu") p.mu = parse_number<double>(key, val, line);
        else if (key == "lambda_decay") p.lambda_decay = parse_number<double>(key, val, line);
        else if (key == "kernel_size") p.kernel_size = parse_number<int>(key, val, line);
        else if (key == "scale_factor") p.scale_factor = parse_number<double>(key, val, line);
        else if (key == "max_outer_iters") p.max_outer_iters = parse_number<int>(key, val, line);
        else if (key == "convergence_tol") p.convergence_tol = parse_number<double>(key, val, line);
        else if (key == "reweight_iters") p.reweight_iters = parse_number<int>(key, val, line);
        else if (key == "pd_iters") p.pd_iters = parse_number<int>(key, val, line);
        else if (key == "pd_tol") p.pd_tol = parse_number<double>(key, val, line);
        else if (key == "lambda_nb") p.lambda_nb = parse_number<double>(key, val, line);
        else throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
    return p;
}

SolverParams load_config(const std::string& path, SolverParams base) {
    return parse_config(read_text_file(path), std::move(base));
}

}  // namespace rgtv
