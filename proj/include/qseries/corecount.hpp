#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qseries/rational.hpp"

namespace qseries {

/// Weakly decreasing positive parts. The default-constructed value is the
/// empty partition of 0.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    std::int64_t weight() const;
};

Partition conjugate(const Partition& p);

/// Hook lengths of the Ferrers-Young diagram, row by row:
/// hook(i,j) = parts[i] - j + conj[j] - i + 1 (0-based here, >= 1 always).
std::vector<std::vector<int>> hook_numbers(const Partition& p);

/// True iff no hook number is divisible by t (t >= 2).
bool is_t_core(const Partition& p, int t);

/// Visits every partition of n in descending lexicographic order of parts.
void enumerate_partitions(int n, const std::function<void(const Partition&)>& visit);

struct CoreCountTable {
    int t = 0;
    std::vector<std::int64_t> values; // values[n] = number of t-core partitions of n
};

/// Counts t-cores by full enumeration of the partitions of each n <= max_n.
/// Refuses max_n beyond the enumeration budget (the oracle exists for trust,
/// not throughput).
CoreCountTable count_cores(int t, int max_n, int budget = 40);

/// Convolution square of count_cores: ordered pairs of t-cores with total
/// weight n.
std::vector<std::int64_t> count_pairs(int t, int max_n, int budget = 40);

} // namespace qseries
