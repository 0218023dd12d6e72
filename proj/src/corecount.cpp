#include "qseries/corecount.hpp"

#include <numeric>

#include "qseries/errors.hpp"

namespace qseries {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw DomainError("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw DomainError("partition parts must be weakly decreasing");
    }
}

std::int64_t Partition::weight() const {
    return std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
}

Partition conjugate(const Partition& p) {
    if (p.parts.empty()) return {};
    std::vector<int> conj(static_cast<std::size_t>(p.parts[0]), 0);
    for (int part : p.parts)
        for (int j = 0; j < part; ++j) ++conj[static_cast<std::size_t>(j)];
    Partition out;
    out.parts = std::move(conj);
    return out;
}

std::vector<std::vector<int>> hook_numbers(const Partition& p) {
    Partition conj = conjugate(p);
    std::vector<std::vector<int>> hooks(p.parts.size());
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        hooks[i].resize(static_cast<std::size_t>(p.parts[i]));
        for (int j = 0; j < p.parts[i]; ++j) {
            int arm = p.parts[i] - (j + 1);
            int leg = conj.parts[static_cast<std::size_t>(j)] - (static_cast<int>(i) + 1);
            hooks[i][static_cast<std::size_t>(j)] = arm + leg + 1;
        }
    }
    return hooks;
}

bool is_t_core(const Partition& p, int t) {
    if (t < 2) throw DomainError("t-core test requires t >= 2");
    for (const auto& row : hook_numbers(p))
        for (int h : row)
            if (h % t == 0) return false;
    return true;
}

namespace {
void enumerate_rec(int remaining, int max_part, std::vector<int>& acc,
                   const std::function<void(const Partition&)>& visit) {
    if (remaining == 0) {
        Partition p;
        p.parts = acc;
        visit(p);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        acc.push_back(part);
        enumerate_rec(remaining - part, part, acc, visit);
        acc.pop_back();
    }
}
} // namespace

void enumerate_partitions(int n, const std::function<void(const Partition&)>& visit) {
    if (n < 0) throw DomainError("cannot enumerate partitions of a negative number");
    std::vector<int> acc;
    enumerate_rec(n, n == 0 ? 1 : n, acc, visit);
}

CoreCountTable count_cores(int t, int max_n, int budget) {
    if (t < 2) throw DomainError("count_cores requires t >= 2");
    if (max_n < 0) throw DomainError("count_cores requires max_n >= 0");
    if (max_n > budget)
        throw BudgetError("enumeration of partitions up to n=" + std::to_string(max_n) +
                              " exceeds the oracle budget",
                          max_n, budget);
    CoreCountTable table;
    table.t = t;
    table.values.assign(static_cast<std::size_t>(max_n) + 1, 0);
    for (int n = 0; n <= max_n; ++n) {
        std::int64_t count = 0;
        enumerate_partitions(n, [&](const Partition& p) {
            if (is_t_core(p, t)) ++count;
        });
        table.values[static_cast<std::size_t>(n)] = count;
    }
    return table;
}

std::vector<std::int64_t> count_pairs(int t, int max_n, int budget) {
    CoreCountTable cores = count_cores(t, max_n, budget);
    std::vector<std::int64_t> pairs(cores.values.size(), 0);
    for (std::size_t n = 0; n < pairs.size(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            pairs[n] += cores.values[i] * cores.values[n - i];
    return pairs;
}

} // namespace qseries
