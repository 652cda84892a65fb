#pragma once

#include <map>
#include <string>

namespace avc {

// Versioned key=value configuration with hard-coded defaults.  CLI flags
// override file values, file values override defaults.
class Config {
  public:
    Config();
    static Config load(const std::string& path);

    long get_long(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    int version() const { return version_; }

  private:
    std::map<std::string, std::string> kv_;
    int version_ = 1;
};

}  // namespace avc
