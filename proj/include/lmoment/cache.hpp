#pragma once
// Content-addressed on-disk store for expensive numeric intermediates
// (Hurwitz-derived L-value grids, character index tables).  Values are
// written as C99 hex-float literals, so a round trip is bit-exact and a
// cache hit can never change numeric output.  All operations are
// best-effort: IO failures degrade to a miss, never to an error.

#include <cinttypes>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

namespace lmoment {

class DiskCache {
  public:
    DiskCache() = default;  // disabled
    explicit DiskCache(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(dir_, ec);
            if (ec) dir_.clear();
        }
    }

    // LMOMENT_CACHE_DIR, or a disabled cache when unset
    static DiskCache from_env() {
        const char* d = std::getenv("LMOMENT_CACHE_DIR");
        return d && *d ? DiskCache(std::string(d)) : DiskCache();
    }

    bool enabled() const { return !dir_.empty(); }

    static uint64_t fnv1a(const std::string& s) {
        uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    std::string path_for(const std::string& key) const {
        char name[32];
        std::snprintf(name, sizeof name, "%016" PRIx64 ".lmc", fnv1a(key));
        return dir_ + "/" + name;
    }

    bool load(const std::string& key, std::vector<double>& out) const {
        if (!enabled()) return false;
        std::FILE* f = std::fopen(path_for(key).c_str(), "rb");
        if (!f) return false;
        bool ok = read_payload(f, key, out);
        std::fclose(f);
        return ok;
    }

    void store(const std::string& key, const std::vector<double>& data) const {
        if (!enabled()) return;
        std::string final_path = path_for(key);
        std::string tmp = final_path + ".tmp";
        std::FILE* f = std::fopen(tmp.c_str(), "wb");
        if (!f) return;
        std::fprintf(f, "lmoment-cache 1\n%s\n%zu\n", key.c_str(), data.size());
        for (double v : data) std::fprintf(f, "%la\n", v);
        bool ok = std::fclose(f) == 0;
        std::error_code ec;
        if (ok)
            std::filesystem::rename(tmp, final_path, ec);
        else
            std::filesystem::remove(tmp, ec);
    }

    bool load_complex(const std::string& key, std::vector<std::complex<double>>& out) const {
        std::vector<double> flat;
        if (!load(key, flat) || flat.size() % 2 != 0) return false;
        out.resize(flat.size() / 2);
        for (size_t i = 0; i < out.size(); ++i) out[i] = {flat[2 * i], flat[2 * i + 1]};
        return true;
    }

    void store_complex(const std::string& key, const std::vector<std::complex<double>>& data) const {
        std::vector<double> flat(2 * data.size());
        for (size_t i = 0; i < data.size(); ++i) {
            flat[2 * i] = data[i].real();
            flat[2 * i + 1] = data[i].imag();
        }
        store(key, flat);
    }

  private:
    static bool read_payload(std::FILE* f, const std::string& key, std::vector<double>& out) {
        char line[4096];
        if (!std::fgets(line, sizeof line, f)) return false;
        if (std::string(line) != "lmoment-cache 1\n") return false;
        if (!std::fgets(line, sizeof line, f)) return false;
        std::string stored_key(line);
        if (!stored_key.empty() && stored_key.back() == '\n') stored_key.pop_back();
        if (stored_key != key) return false;  // hash collision or stale file
        size_t n = 0;
        if (std::fscanf(f, "%zu", &n) != 1 || n > (1u << 28)) return false;
        out.resize(n);
        for (size_t i = 0; i < n; ++i)
            if (std::fscanf(f, "%la", &out[i]) != 1) return false;
        return true;
    }

    std::string dir_;
};

// canonical bit-exact text form of a double, for building cache keys
inline std::string hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%la", v);
    return buf;
}

}  // namespace lmoment
