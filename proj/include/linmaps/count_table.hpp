#ifndef LINMAPS_COUNT_TABLE_HPP
#define LINMAPS_COUNT_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace linmaps {

using Integer = boost::multiprecision::cpp_int;

/// Census indexed by (size n, free-variable count k). Entries absent from the
/// map are zero. `provenance` names the producer that filled it.
struct CountTable {
    std::string provenance;
    std::size_t max_n = 0;
    std::map<std::pair<std::size_t, std::size_t>, Integer> entries;

    Integer at(std::size_t n, std::size_t k) const
    {
        const auto it = entries.find({n, k});
        return it == entries.end() ? Integer(0) : it->second;
    }

    void set(std::size_t n, std::size_t k, Integer value) { entries[{n, k}] = std::move(value); }

    /// Closed counts c(n, 0) for n = first..max_n.
    std::vector<Integer> closed(std::size_t first = 1) const
    {
        std::vector<Integer> out;
        for (std::size_t n = first; n <= max_n; ++n)
            out.push_back(at(n, 0));
        return out;
    }

    Integer row_total(std::size_t n) const
    {
        Integer sum = 0;
        for (const auto& [key, value] : entries)
            if (key.first == n)
                sum += value;
        return sum;
    }

    // Compares every (n, k) present in either table.
    friend bool operator==(const CountTable& a, const CountTable& b)
    {
        if (a.max_n != b.max_n)
            return false;
        for (const auto& [key, value] : a.entries)
            if (b.at(key.first, key.second) != value)
                return false;
        for (const auto& [key, value] : b.entries)
            if (a.at(key.first, key.second) != value)
                return false;
        return true;
    }
};

inline nlohmann::json integer_to_json(const Integer& v)
{
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
        return v.convert_to<std::uint64_t>();
    return v.str();
}

/// CSV with header `n,k,count`. With `closed_only`, rows with k = 0 and n >= 1.
inline std::string to_csv(const CountTable& t, bool closed_only = false)
{
    std::ostringstream out;
    out << "n,k,count\n";
    for (const auto& [key, value] : t.entries) {
        if (closed_only && (key.second != 0 || key.first == 0))
            continue;
        out << key.first << ',' << key.second << ',' << value << '\n';
    }
    return out.str();
}

inline nlohmann::json to_json(const CountTable& t, bool closed_only = false)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, value] : t.entries) {
        if (closed_only && (key.second != 0 || key.first == 0))
            continue;
        rows.push_back({{"n", key.first}, {"k", key.second}, {"count", integer_to_json(value)}});
    }
    return {{"provenance", t.provenance}, {"max_n", t.max_n}, {"entries", std::move(rows)}};
}

inline Integer factorial(std::size_t k)
{
    Integer f = 1;
    for (std::size_t i = 2; i <= k; ++i)
        f *= i;
    return f;
}

} // namespace linmaps

#endif // LINMAPS_COUNT_TABLE_HPP
