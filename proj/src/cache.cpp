#include "qk1/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qk1/io.hpp"
#include "qk1/version.hpp"

namespace qk1::disk_cache {

namespace {

std::string header_line() {
    return std::string("qk1-cache ") + kCacheFormatVersion + " engine=" + kEngineVersion;
}

std::string record_body(int n, int m, const std::string& p, const std::string& p0) {
    std::ostringstream os;
    os << "record n=" << n << " m=" << m << "\nP " << p << "\nP0 " << p0 << "\n";
    return os.str();
}

std::string checksum_line(const std::string& body) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body)));
    return std::string("sum ") + buf;
}

}  // namespace

LoadResult load(const std::string& path) {
    LoadResult result;
    std::ifstream in(path);
    if (!in) return result;
    std::string line;
    if (!std::getline(in, line) || line != header_line()) {
        result.dropped = 1;
        return result;
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int n = 0, m = 0;
        if (std::sscanf(line.c_str(), "record n=%d m=%d", &n, &m) != 2) {
            ++result.dropped;
            continue;
        }
        std::string p_line, p0_line, sum_line;
        if (!std::getline(in, p_line) || !std::getline(in, p0_line) ||
            !std::getline(in, sum_line) || p_line.rfind("P ", 0) != 0 ||
            p0_line.rfind("P0 ", 0) != 0 || sum_line.rfind("sum ", 0) != 0) {
            ++result.dropped;
            continue;
        }
        std::string p = p_line.substr(2), p0 = p0_line.substr(3);
        if (sum_line != checksum_line(record_body(n, m, p, p0))) {
            ++result.dropped;
            continue;
        }
        if (n < 1 || m < 0 || m > n) {
            ++result.dropped;
            continue;
        }
        try {
            PartialEntry entry{parse_rational_function(p, m + 1),
                               parse_rational_function(p0, m + 1), true};
            result.entries.emplace(InvariantKey{n, m}, std::move(entry));
        } catch (const input_error&) {
            ++result.dropped;
        }
    }
    return result;
}

void save(const std::string& path, const std::map<InvariantKey, PartialEntry>& entries) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw input_error("cache: cannot write " + tmp.string());
        out << header_line() << "\n";
        for (const auto& [key, entry] : entries) {
            std::string body = record_body(key.n, key.m, to_string(entry.p),
                                           to_string(entry.p_at_q0));
            out << body << checksum_line(body) << "\n";
        }
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace qk1::disk_cache
