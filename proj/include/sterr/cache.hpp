#pragma once

// Disk cache for DeltaRecords. One record per line:
//
//   k,M,precision_bits,S_lower,S_upper,u_star,f_at_ustar
//
// Reals are serialized in decimal with ceil(bits log10 2) + 2 significant
// digits, which round-trips exactly at the recorded precision. Blank lines
// and lines starting with '#' are ignored on read, never written.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sterr/delta_bounds.hpp"

namespace sterr::bounds {

class CacheError : public std::runtime_error {
  public:
    explicit CacheError(const std::string& msg, long line = -1)
        : std::runtime_error(line >= 0 ? msg + " (line " + std::to_string(line) + ")"
                                       : msg),
          line_(line) {}

    long line() const { return line_; }

  private:
    long line_;
};

struct CacheKey {
    long k;
    long M;
    int precision_bits;

    friend bool operator<(const CacheKey& a, const CacheKey& b) {
        return std::tie(a.k, a.M, a.precision_bits) <
               std::tie(b.k, b.M, b.precision_bits);
    }
};

inline std::string serialize_record(const DeltaRecord& rec) {
    const int digits = decimal_digits_for(rec.precision_bits);
    std::ostringstream out;
    out << rec.k << ',' << rec.M << ',' << rec.precision_bits << ','
        << rec.S_lower.to_string(digits) << ',' << rec.S_upper.to_string(digits)
        << ',' << rec.u_star.to_string(digits) << ','
        << rec.f_at_ustar.to_string(digits);
    return out.str();
}

inline DeltaRecord parse_record(const std::string& line, long line_no = -1) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
        throw CacheError("cache record needs 7 fields, got " +
                             std::to_string(fields.size()),
                         line_no);
    DeltaRecord rec;
    try {
        rec.k = std::stol(fields[0]);
        rec.M = std::stol(fields[1]);
        rec.precision_bits = std::stoi(fields[2]);
    } catch (const std::exception&) {
        throw CacheError("cache record has malformed integer field", line_no);
    }
    if (rec.k < 2 || rec.M < 2 || rec.precision_bits < 53)
        throw CacheError("cache record out of domain", line_no);
    try {
        rec.S_lower = BigFloat::from_string(fields[3], rec.precision_bits);
        rec.S_upper = BigFloat::from_string(fields[4], rec.precision_bits);
        rec.u_star = BigFloat::from_string(fields[5], rec.precision_bits);
        rec.f_at_ustar = BigFloat::from_string(fields[6], rec.precision_bits);
    } catch (const std::invalid_argument&) {
        throw CacheError("cache record has malformed real field", line_no);
    }
    if (rec.S_upper < rec.S_lower)
        throw CacheError("cache record has inverted bounds", line_no);
    return rec;
}

class DeltaCache {
  public:
    DeltaCache() = default;

    static DeltaCache load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw CacheError("cannot open cache file " + path);
        DeltaCache cache;
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            cache.insert(parse_record(line, line_no));
        }
        return cache;
    }

    static DeltaCache load_or_empty(const std::string& path) {
        if (!std::filesystem::exists(path)) return DeltaCache();
        return load(path);
    }

    void save(const std::string& path) const {
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw CacheError("cannot write cache file " + tmp);
            for (const auto& [key, rec] : records_) out << serialize_record(rec) << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

    // Returns true if the record was new; re-inserting a (k, M, precision)
    // triple replaces the stored record and reports false.
    bool insert(const DeltaRecord& rec) {
        CacheKey key{rec.k, rec.M, rec.precision_bits};
        auto [it, fresh] = records_.insert_or_assign(key, rec);
        (void)it;
        return fresh;
    }

    bool contains(long k, long M, int bits) const {
        return records_.count(CacheKey{k, M, bits}) > 0;
    }

    const DeltaRecord* find(long k, long M, int bits) const {
        auto it = records_.find(CacheKey{k, M, bits});
        return it == records_.end() ? nullptr : &it->second;
    }

    // All records at one (M, precision), keyed by k.
    DeltaMap select(long M, int bits) const {
        DeltaMap out;
        for (const auto& [key, rec] : records_)
            if (key.M == M && key.precision_bits == bits) out.emplace(key.k, rec);
        return out;
    }

    std::size_t prune(const std::function<bool(const DeltaRecord&)>& keep) {
        std::size_t removed = 0;
        for (auto it = records_.begin(); it != records_.end();) {
            if (keep(it->second)) {
                ++it;
            } else {
                it = records_.erase(it);
                ++removed;
            }
        }
        return removed;
    }

    std::size_t size() const { return records_.size(); }
    const std::map<CacheKey, DeltaRecord>& all() const { return records_; }

  private:
    std::map<CacheKey, DeltaRecord> records_;
};

}  // namespace sterr::bounds
