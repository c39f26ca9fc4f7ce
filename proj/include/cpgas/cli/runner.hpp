#pragma once

#include "cpgas/cli/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cpgas::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::string> labels; // optional leading text column (limit_check)
    std::vector<std::vector<double>> rows;
    int flagged = 0; // rows whose error estimate exceeds the requested tolerance
};

std::vector<double> sweep_grid(const SweepSpec& sweep);

// DISPERSION_KERNEL_THREADS: unset or 0 means hardware concurrency.
int thread_count_from_env();

Table compute(const RunConfig& cfg, int threads);
std::string render(const RunConfig& cfg, const Table& table);

// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

// Full batch run: compute, render, write, one summary line on `out`.
void run(const RunConfig& cfg, std::ostream& out);

std::string explain(Task task);

} // namespace cpgas::cli
