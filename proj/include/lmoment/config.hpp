#pragma once
// Line-oriented key=value run configuration.  The canonical serialization
// (keys sorted, one per line) feeds the run id, so identical configs always
// map to identical output files.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmoment {

struct RunConfig {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) != 0; }

    std::string get(const std::string& k, const std::string& dflt = "") const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }

    uint64_t get_u64(const std::string& k, uint64_t dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        return parse_u64(k, it->second);
    }

    double get_double(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        try {
            size_t pos = 0;
            double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad numeric value for " + k);
        }
    }

    std::vector<uint64_t> get_u64_list(const std::string& k) const {
        std::vector<uint64_t> out;
        std::string raw = get(k);
        if (raw.empty()) return out;
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(parse_u64(k, item));
        return out;
    }

    void set(const std::string& k, const std::string& v) { kv[k] = v; }

    // keys in sorted order, one per line; the run id hashes this
    std::string canonical() const {
        std::string out;
        for (const auto& [k, v] : kv) {
            out += k;
            out += '=';
            out += v;
            out += '\n';
        }
        return out;
    }

    static uint64_t parse_u64(const std::string& k, const std::string& v) {
        try {
            size_t pos = 0;
            unsigned long long x = std::stoull(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing junk");
            return x;
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad integer value for " + k);
        }
    }
};

// '#' starts a comment; blank lines are skipped; everything else is key=value
inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        k.erase(std::find_if(k.rbegin(), k.rend(), notspace).base(), k.end());
        v.erase(v.begin(), std::find_if(v.begin(), v.end(), notspace));
        cfg.kv[k] = v;
    }
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace lmoment
