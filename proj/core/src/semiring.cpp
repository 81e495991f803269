#include "csmooth/semiring.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace csmooth {

SemiringName semiring_from_name(const std::string& name) {
    if (name == "prob") return SemiringName::Prob;
    if (name == "count") return SemiringName::Count;
    if (name == "maxplus") return SemiringName::MaxPlus;
    if (name == "logprob") return SemiringName::LogProb;
    throw std::invalid_argument("unknown semiring '" + name + "'");
}

WeightTable parse_weights(std::istream& in, std::uint32_t num_vars) {
    WeightTable table(num_vars);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        if (line[i] == 'c' && (i + 1 >= line.size() || line[i + 1] == ' ')) continue;
        std::istringstream tok(line);
        long long lit = 0;
        double w = 0.0;
        if (!(tok >> lit >> w) || lit == 0)
            throw std::runtime_error("weights line " + std::to_string(lineno) + ": expected '<signed-literal> <decimal>'");
        long long var = lit < 0 ? -lit : lit;
        if (var > num_vars)
            throw std::runtime_error("weights line " + std::to_string(lineno) + ": variable " +
                                     std::to_string(var) + " out of range");
        table.set(Literal{static_cast<std::int32_t>(lit)}, w);
    }
    return table;
}

WeightTable load_weights_file(const std::string& path, std::uint32_t num_vars) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights file: " + path);
    return parse_weights(in, num_vars);
}

}  // namespace csmooth
