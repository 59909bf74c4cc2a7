// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_CONFIG_H
#define RADLAB_CONFIG_H

#include <map>
#include <string>
#include <vector>

#include "radlab/vec.h"

namespace radlab {

// Plain-text key=value config ('#' starts a comment, blank lines ignored).
// Insertion order is preserved on write so files stay diffable.
class ConfigMap {
  public:
    ConfigMap() = default;

    static ConfigMap parse_file(const std::string &path);
    static ConfigMap parse_string(const std::string &text);
    void write_file(const std::string &path) const;

    bool has(const std::string &key) const;
    void set(const std::string &key, const std::string &value);
    void set(const std::string &key, double value);
    void set(const std::string &key, int value);
    void set(const std::string &key, const Vec3 &value);

    // Throwing accessors for required keys.
    const std::string &get_str(const std::string &key) const;
    double get_double(const std::string &key) const;
    int get_int(const std::string &key) const;
    Vec3 get_vec3(const std::string &key) const; // "x y z"

    // Defaulted accessors.
    std::string get_str(const std::string &key, const std::string &def) const;
    double get_double(const std::string &key, double def) const;
    int get_int(const std::string &key, int def) const;
    Vec3 get_vec3(const std::string &key, const Vec3 &def) const;

    const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, size_t> index_;
};

// Shared numeric formatting for config/CSV output: shortest round-trippable
// decimal form, stable across runs ("inf"/"nan" spelled exactly so).
std::string format_double(double v);

} // namespace radlab

#endif
