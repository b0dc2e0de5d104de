#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dsq/model.hpp"

namespace dsq {

// Flat key -> value map. Accepts either `key = value` / `key: value` lines
// (with `#` comments) or a flat JSON object.
class Config {
public:
    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long> get_int(const std::string& key) const;
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Keys: nu, mass_ratio, wannier_convention, n0_xi, physical_xi_m,
// physical_mu_hz, physical_gamma_hz. Missing keys keep their defaults.
ModelParams model_params_from(const Config& cfg, ModelParams base = {});

}  // namespace dsq
