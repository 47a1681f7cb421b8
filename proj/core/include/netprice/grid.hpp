#pragma once

#include <map>
#include <string>
#include <vector>

#include "netprice/params.hpp"

namespace netprice {

/// Per-key candidate value lists; expands to the Cartesian product.
class ParamGrid {
public:
    ParamGrid() = default;

    void add(const std::string& key, std::vector<ParamMap::Value> values);
    bool empty() const { return values_.empty(); }
    std::size_t size() const;
    const std::map<std::string, std::vector<ParamMap::Value>>& values() const { return values_; }

private:
    std::map<std::string, std::vector<ParamMap::Value>> values_;
};

/// Cartesian product in deterministic order: keys sorted lexicographically,
/// first key slowest, values in the order given. Every expanded map passes
/// ParamMap validation. An empty grid expands to the single all-defaults map.
std::vector<ParamMap> expand_grid(const ParamGrid& grid);

} // namespace netprice
