#pragma once

#include <cstdint>
#include <string>

#include "kkp/instance.hpp"
#include "kkp/rational.hpp"

namespace kkp {

enum class GeneratorKind { Uniform, WeaklyCorrelated, ArithTight, GeoTight, Theorem4 };

GeneratorKind generator_kind_from_name(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Uniform;
    std::int64_t n = 0;
    std::int64_t k = 0; // 0 -> derived (max(1, n/2); tight kinds: gamma)
    std::int64_t c = 0; // 0 -> ⌊Σw/2⌋
    std::int64_t profit_lo = 1, profit_hi = 1000;
    std::int64_t weight_lo = 1, weight_hi = 1000;
    std::int64_t noise = 100;          // weakly-correlated profit offset
    std::int64_t gamma = 0, p_h = 0;   // tight kinds
    Rat epsilon;                       // tight kinds + theorem4
    std::uint64_t seed = 0;
};

struct Generated {
    Instance instance;
    std::int64_t scale = 1;       // rational levels cleared to integers
    std::int64_t scaled_p_h = 0;  // anchor for the scaled instance (tight kinds)
};

// Pure function of (spec, seed): same inputs give byte-identical instances.
Generated generate(const GeneratorSpec& spec);

GeneratorSpec parse_generator_spec_json(const std::string& json_text);

// Suite file: {"instances":[{generator spec...,"id":...}], "eps":["1/4",...],
// "algs":["half","ptas",...]}. One CSV row per (instance, algorithm, eps);
// the opt/ratio columns stay empty when the oracle refuses the size.
std::string bench_suite(const std::string& suite_json);

} // namespace kkp
