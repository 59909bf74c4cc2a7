// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "radlab/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radlab {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

ConfigMap ConfigMap::parse_string(const std::string &text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config parse error at line " + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config parse error at line " + std::to_string(lineno) +
                                     ": empty key");
        cfg.set(key, value);
    }
    return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_string(ss.str());
    } catch (const std::runtime_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void ConfigMap::write_file(const std::string &path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    for (const auto &[k, v] : entries_) out << k << "=" << v << "\n";
}

bool ConfigMap::has(const std::string &key) const { return index_.count(key) != 0; }

void ConfigMap::set(const std::string &key, const std::string &value) {
    auto it = index_.find(key);
    if (it != index_.end()) {
        entries_[it->second].second = value;
    } else {
        index_[key] = entries_.size();
        entries_.emplace_back(key, value);
    }
}

void ConfigMap::set(const std::string &key, double value) { set(key, format_double(value)); }
void ConfigMap::set(const std::string &key, int value) { set(key, std::to_string(value)); }
void ConfigMap::set(const std::string &key, const Vec3 &value) {
    set(key, format_double(value.x) + " " + format_double(value.y) + " " +
                 format_double(value.z));
}

const std::string &ConfigMap::get_str(const std::string &key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::runtime_error("missing config key: " + key);
    return entries_[it->second].second;
}

double ConfigMap::get_double(const std::string &key) const {
    const std::string &s = get_str(key);
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw std::runtime_error("config key " + key + " is not a number");
    return v;
}

int ConfigMap::get_int(const std::string &key) const {
    double v = get_double(key);
    return static_cast<int>(v);
}

Vec3 ConfigMap::get_vec3(const std::string &key) const {
    std::istringstream in(get_str(key));
    Vec3 v;
    if (!(in >> v.x >> v.y >> v.z))
        throw std::runtime_error("config key " + key + " is not a 3-vector");
    return v;
}

std::string ConfigMap::get_str(const std::string &key, const std::string &def) const {
    return has(key) ? get_str(key) : def;
}
double ConfigMap::get_double(const std::string &key, double def) const {
    return has(key) ? get_double(key) : def;
}
int ConfigMap::get_int(const std::string &key, int def) const {
    return has(key) ? get_int(key) : def;
}
Vec3 ConfigMap::get_vec3(const std::string &key, const Vec3 &def) const {
    return has(key) ? get_vec3(key) : def;
}

} // namespace radlab
