#include "netprice/grid.hpp"

#include "netprice/errors.hpp"

namespace netprice {

void ParamGrid::add(const std::string& key, std::vector<ParamMap::Value> values) {
    if (values.empty()) throw GridError("grid key '" + key + "' has an empty candidate list");
    values_[key] = std::move(values);
}

std::size_t ParamGrid::size() const {
    std::size_t n = 1;
    for (const auto& [key, list] : values_) n *= list.size();
    return n;
}

std::vector<ParamMap> expand_grid(const ParamGrid& grid) {
    std::vector<ParamMap> expanded;
    expanded.reserve(grid.size());
    ParamMap current;

    // Odometer over the sorted keys; the last key varies fastest.
    const auto& lists = grid.values();
    std::vector<const std::string*> keys;
    keys.reserve(lists.size());
    for (const auto& [key, list] : lists) keys.push_back(&key);

    auto emit = [&](auto&& self, std::size_t key_index) -> void {
        if (key_index == keys.size()) {
            current.validate();
            expanded.push_back(current);
            return;
        }
        const auto& list = lists.at(*keys[key_index]);
        for (const auto& value : list) {
            current.set(*keys[key_index], value);
            self(self, key_index + 1);
        }
    };
    emit(emit, 0);
    return expanded;
}

} // namespace netprice
