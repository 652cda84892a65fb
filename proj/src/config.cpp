#include "avcensus/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "avcensus/support.hpp"

namespace avc {

Config::Config() {
    kv_ = {
        {"weil.max_g", "4"},
        {"weil.max_q", "9"},
        {"hilb.max_j", "12"},
        {"lattice.max_cells", "16"},
        {"classno.max_d", "1000000"},
        {"hermitian.max_rank", "4"},
        {"hermitian.bound_scale", "2"},
        {"zlattice.max_rank", "8"},
        {"ec.max_p", "100000"},
        {"ec.max_scan_p", "1000"},
        {"ec.max_density_x", "10000000"},
        {"cl.prng", "splitmix64-counter"},
        {"threads", "1"},
        {"cache_dir", ""},
    };
}

Config Config::load(const std::string& path) {
    Config c;
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "version") {
            c.version_ = std::stoi(val);
            continue;
        }
        if (!key.empty()) c.kv_[key] = val;
    }
    return c;
}

long Config::get_long(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw PreconditionError("unknown config key: " + key);
    return std::stol(it->second);
}

double Config::get_double(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw PreconditionError("unknown config key: " + key);
    return std::stod(it->second);
}

std::string Config::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw PreconditionError("unknown config key: " + key);
    return it->second;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string mpf_decimal(const mpf_class& v, int digits) {
    mp_exp_t e;
    std::string mant = v.get_str(e, 10, digits);
    if (mant.empty()) return "0";
    bool neg = mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    std::ostringstream os;
    if (neg) os << '-';
    if (e <= 0) {
        os << "0." << std::string(size_t(-e), '0') << d;
    } else if (size_t(e) >= d.size()) {
        os << d << std::string(size_t(e) - d.size(), '0');
    } else {
        os << d.substr(0, size_t(e)) << "." << d.substr(size_t(e));
    }
    return os.str();
}

}  // namespace avc
