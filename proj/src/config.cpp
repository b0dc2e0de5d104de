#include "dsq/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dsq/error.hpp"

namespace dsq {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

Config Config::parse(std::string_view text) {
    Config cfg;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParameterError(std::string("config: invalid JSON: ") + e.what());
        }
        if (!j.is_object()) throw ParameterError("config: JSON root must be an object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_string())
                cfg.values_[it.key()] = it->get<std::string>();
            else if (it->is_number() || it->is_boolean())
                cfg.values_[it.key()] = it->dump();
            else if (!it->is_null())
                throw ParameterError("config: key '" + it.key() + "' must be a scalar");
        }
        return cfg;
    }

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        auto sep = t.find_first_of("=:");
        if (sep == std::string::npos)
            throw ParameterError("config: line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(std::string_view(t).substr(0, sep));
        std::string value = unquote(trim(std::string_view(t).substr(sep + 1)));
        if (key.empty())
            throw ParameterError("config: line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("config: cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::optional<std::string> Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> Config::get_double(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    try {
        std::size_t pos = 0;
        double d = std::stod(*v, &pos);
        if (trim(std::string_view(*v).substr(pos)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ParameterError("config: key '" + key + "' is not a number: '" + *v + "'");
}

std::optional<long> Config::get_int(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    try {
        std::size_t pos = 0;
        long n = std::stol(*v, &pos);
        if (trim(std::string_view(*v).substr(pos)).empty()) return n;
    } catch (const std::exception&) {
    }
    throw ParameterError("config: key '" + key + "' is not an integer: '" + *v + "'");
}

ModelParams model_params_from(const Config& cfg, ModelParams p) {
    if (auto v = cfg.get_double("nu")) p.nu = *v;
    if (auto v = cfg.get_double("mass_ratio")) p.mass_ratio = *v;
    if (auto v = cfg.get("wannier_convention")) p.wannier = wannier_convention_from_string(*v);
    if (auto v = cfg.get_double("n0_xi")) p.n0_xi = *v;
    if (auto v = cfg.get_double("physical_xi_m")) p.physical_xi_m = *v;
    if (auto v = cfg.get_double("physical_mu_hz")) p.physical_mu_hz = *v;
    if (auto v = cfg.get_double("physical_gamma_hz")) p.physical_gamma_hz = *v;
    p.validate();
    return p;
}

}  // namespace dsq
