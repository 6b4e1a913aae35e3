#include "kkp/report.hpp"

#include <sstream>

#include <json.hpp>

namespace kkp {

std::string SolveReport::to_json() const {
    nlohmann::json j;
    j["algorithm"] = algorithm;
    if (epsilon) j["epsilon"] = to_string(*epsilon);
    j["value"] = value;
    j["item_ids"] = item_ids;
    j["feasible"] = feasible;
    j["certified_lower_bound"] = certified_lower_bound;
    if (opt_if_known) j["opt"] = *opt_if_known;
    j["wall_ns"] = wall_ns;
    nlohmann::json counters_json = nlohmann::json::object();
    for (const auto& [name, v] : counters) counters_json[name] = v;
    j["counters"] = counters_json;
    return j.dump();
}

std::string SolveReport::to_text() const {
    std::ostringstream out;
    out << "algorithm: " << algorithm << '\n';
    if (epsilon) out << "epsilon: " << to_string(*epsilon) << '\n';
    out << "value: " << value << '\n';
    out << "items:";
    for (ItemId id : item_ids) out << ' ' << id;
    out << '\n';
    out << "feasible: " << (feasible ? "yes" : "no") << '\n';
    out << "certified_lower_bound: " << certified_lower_bound << '\n';
    if (opt_if_known) out << "opt: " << *opt_if_known << '\n';
    out << "wall_ns: " << wall_ns << '\n';
    for (const auto& [name, v] : counters) out << name << ": " << v << '\n';
    return out.str();
}

void check_report(const SolveReport& report, const Instance& inst) {
    const Solution sol = evaluate(inst, report.item_ids);
    internal_check(sol.profit_total == report.value, "report value does not re-evaluate");
    internal_check(sol.feasible == report.feasible, "report feasibility flag is wrong");
}

} // namespace kkp
