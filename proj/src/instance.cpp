#include "kkp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace kkp {

namespace {

constexpr std::int64_t kMaxValue = 1'000'000'000;     // per-item profit/weight cap
constexpr std::int64_t kMaxCapacity = 1'000'000'000'000'000; // 1e15
constexpr std::int64_t kMaxItems = 10'000'000;

void validate_raw(const Instance& inst) {
    require(!inst.items.empty(), "instance has no items");
    require(inst.n() <= kMaxItems, "instance too large");
    require(inst.capacity >= 1 && inst.capacity <= kMaxCapacity, "capacity out of range");
    require(inst.cardinality_bound >= 1, "cardinality bound must be >= 1");
    for (const Item& it : inst.items) {
        require(it.profit >= 1 && it.profit <= kMaxValue,
                "item " + std::to_string(it.id) + ": profit out of range");
        require(it.weight >= 1 && it.weight <= kMaxValue,
                "item " + std::to_string(it.id) + ": weight out of range");
    }
}

} // namespace

std::int64_t Instance::total_weight() const {
    std::int64_t sum = 0;
    for (const Item& it : items) sum += it.weight;
    return sum;
}

std::int64_t Instance::max_profit() const {
    std::int64_t best = 0;
    for (const Item& it : items) best = std::max(best, it.profit);
    return best;
}

Normalized normalize(const Instance& raw) {
    validate_raw(raw);
    Normalized out;
    out.instance.capacity = raw.capacity;
    for (const Item& it : raw.items) {
        if (it.weight > raw.capacity) {
            out.log.removed.push_back(it.id);
        } else {
            out.instance.items.push_back(it);
        }
    }
    require(!out.instance.items.empty(), "no packable items");

    const std::int64_t n = out.instance.n();
    out.instance.cardinality_bound = std::min(raw.cardinality_bound, n);
    out.log.k_clamped = out.instance.cardinality_bound != raw.cardinality_bound;

    if (out.instance.total_weight() <= out.instance.capacity &&
        n <= out.instance.cardinality_bound) {
        out.log.trivially_solvable = true;
        out.log.note = "trivially solvable: take all items";
    }
    return out;
}

Solution evaluate(const Instance& inst, std::span<const ItemId> ids) {
    // Fast path: ids are positions when nothing was removed.
    bool identity = true;
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        if (inst.items[i].id != i) { identity = false; break; }
    }
    std::unordered_map<ItemId, const Item*> lookup;
    if (!identity) {
        lookup.reserve(inst.items.size() * 2);
        for (const Item& it : inst.items) lookup.emplace(it.id, &it);
    }
    Solution sol;
    std::unordered_set<ItemId> seen;
    seen.reserve(ids.size() * 2);
    for (ItemId id : ids) {
        require(seen.insert(id).second, "duplicate item id " + std::to_string(id));
        const Item* found = nullptr;
        if (identity) {
            if (id < inst.items.size()) found = &inst.items[id];
        } else if (const auto it = lookup.find(id); it != lookup.end()) {
            found = it->second;
        }
        require(found != nullptr, "unknown item id " + std::to_string(id));
        sol.profit_total += found->profit;
        sol.weight_total += found->weight;
        sol.selected.push_back(id);
    }
    std::sort(sol.selected.begin(), sol.selected.end());
    sol.feasible = sol.weight_total <= inst.capacity &&
                   static_cast<std::int64_t>(sol.selected.size()) <= inst.cardinality_bound;
    return sol;
}

Solution take_all(const Instance& inst) {
    std::vector<ItemId> ids;
    ids.reserve(inst.items.size());
    for (const Item& it : inst.items) ids.push_back(it.id);
    return evaluate(inst, ids);
}

Instance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    std::int64_t n = 0;
    Instance inst;
    if (!(in >> n >> inst.capacity >> inst.cardinality_bound))
        throw InputError("bad header: expected 'n c k'");
    require(n >= 1 && n <= kMaxItems, "item count out of range");
    inst.items.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Item it;
        it.id = static_cast<ItemId>(i);
        if (!(in >> it.profit >> it.weight))
            throw InputError("bad item line " + std::to_string(i + 2));
        inst.items.push_back(it);
    }
    validate_raw(inst);
    return inst;
}

Instance parse_instance_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("bad JSON instance: ") + e.what());
    }
    require(j.contains("capacity") && j.contains("cardinality_bound") && j.contains("items"),
            "JSON instance needs capacity, cardinality_bound, items");
    Instance inst;
    inst.capacity = j.at("capacity").get<std::int64_t>();
    inst.cardinality_bound = j.at("cardinality_bound").get<std::int64_t>();
    ItemId id = 0;
    for (const auto& e : j.at("items")) {
        Item it;
        it.id = id++;
        it.profit = e.at("profit").get<std::int64_t>();
        it.weight = e.at("weight").get<std::int64_t>();
        inst.items.push_back(it);
    }
    validate_raw(inst);
    return inst;
}

Instance parse_instance(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_instance_json(text) : parse_instance_text(text);
    }
    throw InputError("empty instance file");
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string write_instance_text(const Instance& inst) {
    std::ostringstream out;
    out << inst.n() << ' ' << inst.capacity << ' ' << inst.cardinality_bound << '\n';
    for (const Item& it : inst.items) out << it.profit << ' ' << it.weight << '\n';
    return out.str();
}

std::string write_instance_json(const Instance& inst) {
    nlohmann::json items = nlohmann::json::array();
    for (const Item& it : inst.items)
        items.push_back({{"profit", it.profit}, {"weight", it.weight}});
    nlohmann::json j{{"capacity", inst.capacity},
                     {"cardinality_bound", inst.cardinality_bound},
                     {"items", items}};
    return j.dump() + "\n";
}

void write_instance_file(const Instance& inst, const std::string& path, bool json) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot write " + path);
    out << (json ? write_instance_json(inst) : write_instance_text(inst));
}

} // namespace kkp
