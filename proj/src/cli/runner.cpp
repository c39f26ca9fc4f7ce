#include "cpgas/cli/runner.hpp"

#include "cpgas/geometry_forces.hpp"
#include "cpgas/pair_potential.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>
#include <unistd.h>

namespace cpgas::cli {

namespace {

const char* units_line =
    "# units: natural (hbar = c = 1); lengths in 1/omega, energies in omega, forces in omega^2";

bool exceeds_tolerance(double error, double value, const QuadratureSpec& q) {
    return error > std::max(q.rel_tol() * std::abs(value), q.abs_tol());
}

// Rows are evaluated in any order but stored by index, so output order never depends on threads.
template <class Fn>
std::vector<std::vector<double>> parallel_rows(std::size_t count, int threads, Fn&& fn) {
    std::vector<std::vector<double>> rows(count);
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                rows[i] = fn(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (auto& f : failures)
        if (f)
            std::rethrow_exception(f);
    return rows;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

Table limit_check(const RunConfig& run) {
    const PairConfig cfg = run.pair_config();
    const double w_min = std::min(cfg.atom_a().omega(), cfg.atom_b().omega());
    const double w_max = std::max(cfg.atom_a().omega(), cfg.atom_b().omega());
    const double small = wavelength(w_max) / 100.0;
    const double large = 100.0 * wavelength(w_min);

    struct Item {
        const char* name;
        double R;
        double computed;
        AsymptoticRegime regime;
    };
    const Item items[] = {
        {"vdw_excited_resonant", small, pair_potential(cfg, small, AtomAState::Excited).resonant,
         AsymptoticRegime::VdwExcited},
        {"retarded_excited_resonant", large, pair_potential(cfg, large, AtomAState::Excited).resonant,
         AsymptoticRegime::RetardedExcited},
        {"vdw_ground", small, potential_ground(cfg, small), AsymptoticRegime::VdwGround},
        {"retarded_ground", large, potential_ground(cfg, large), AsymptoticRegime::RetardedGround},
    };
    Table t;
    t.columns = {"regime", "R", "U", "U_asymptote", "ratio", "pass"};
    for (const auto& item : items) {
        const double asym = asymptotic_limit(cfg, item.R, item.regime);
        const double ratio = item.computed / asym;
        t.labels.push_back(item.name);
        t.rows.push_back({item.R, item.computed, asym, ratio, std::abs(ratio - 1.0) < 0.01 ? 1.0 : 0.0});
    }
    return t;
}

} // namespace

std::vector<double> sweep_grid(const SweepSpec& sweep) {
    std::vector<double> grid(sweep.points);
    const int last = sweep.points - 1;
    for (int i = 0; i <= last; ++i) {
        const double f = static_cast<double>(i) / last;
        grid[i] = sweep.spacing == Spacing::Logarithmic
                      ? sweep.min * std::pow(sweep.max / sweep.min, f)
                      : sweep.min + (sweep.max - sweep.min) * f;
    }
    grid.front() = sweep.min;
    grid.back() = sweep.max;
    return grid;
}

int thread_count_from_env() {
    const char* raw = std::getenv("DISPERSION_KERNEL_THREADS");
    long value = 0;
    if (raw && *raw) {
        char* end = nullptr;
        value = std::strtol(raw, &end, 10);
        if (*end != '\0' || value < 0 || value > 4096)
            throw ConfigError(std::string("DISPERSION_KERNEL_THREADS: '") + raw
                              + "' is not an integer in [0, 4096]");
    }
    if (value == 0)
        value = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<int>(value);
}

Table compute(const RunConfig& run, int threads) {
    if (run.task == Task::LimitCheck)
        return limit_check(run);

    const PairConfig cfg = run.pair_config();
    const auto grid = sweep_grid(*run.sweep);
    const auto& q = cfg.quad();
    const VolumeOracleSpec oracle(run.radial_cutoff, q);
    Table t;

    switch (run.task) {
    case Task::PairPotential:
        t.columns = {"R", "U_total", "U_resonant", "U_nonresonant", "err"};
        t.rows = parallel_rows(grid.size(), threads, [&](std::size_t i) {
            const auto u = pair_potential(cfg, grid[i], run.state);
            return std::vector<double>{grid[i], u.total, u.resonant, u.nonresonant, u.error_estimate};
        });
        for (const auto& r : t.rows)
            t.flagged += exceeds_tolerance(r[4], r[3], q);
        break;
    case Task::PairForce: {
        const bool excited = run.state == AtomAState::Excited;
        t.columns = {"R", "F_total", "F_resonant", "F_nonresonant", "F_slab_model"};
        if (run.geometry.r0)
            t.columns.push_back("F_exponential");
        t.columns.push_back("err");
        t.rows = parallel_rows(grid.size(), threads, [&](std::size_t i) {
            const double R = grid[i];
            const auto f = pair_force(cfg, R, run.state);
            std::vector<double> row{R, f.total, f.resonant, f.nonresonant,
                                    excited ? resonant_force(cfg, R, ForceEnvelope::slab_model()) : 0.0};
            if (run.geometry.r0)
                row.push_back(excited ? resonant_force(cfg, R, ForceEnvelope::exponential(
                                                                   *run.geometry.r0, run.geometry.l_ph))
                                      : 0.0);
            row.push_back(f.error_estimate);
            return row;
        });
        for (const auto& r : t.rows)
            t.flagged += exceeds_tolerance(r.back(), r[3], q);
        break;
    }
    case Task::PlanarForce:
        t.columns = {"z0", "F_closed", "F_oracle", "F_literature", "F_near_law", "F_far_law", "err"};
        t.rows = parallel_rows(grid.size(), threads, [&](std::size_t i) {
            const HalfSpaceGeometry g(grid[i], run.geometry.l_ph);
            const auto oracle_result = planar_force_oracle(cfg, g, oracle);
            return std::vector<double>{grid[i],
                                       planar_force_closed(cfg, g, PlanarClosedForm::Integrated),
                                       oracle_result.value,
                                       planar_force_closed(cfg, g, PlanarClosedForm::Literature),
                                       planar_force_near_law(cfg, g),
                                       planar_force_far_law(cfg, g),
                                       oracle_result.error_estimate};
        });
        for (const auto& r : t.rows)
            t.flagged += exceeds_tolerance(r[6], r[2], q);
        break;
    case Task::HemisphereForce:
        t.columns = {"R0", "F_oracle", "F_far", "F_near", "F_near_literature", "err"};
        t.rows = parallel_rows(grid.size(), threads, [&](std::size_t i) {
            const HemisphereGeometry g(grid[i], run.geometry.l_ph);
            const auto oracle_result = hemisphere_force_oracle(cfg, g, oracle);
            return std::vector<double>{grid[i], oracle_result.value,
                                       hemisphere_force_closed(cfg, g, HemisphereRegime::Far).force,
                                       hemisphere_force_closed(cfg, g, HemisphereRegime::Near).force,
                                       hemisphere_force_near_literature(cfg, g),
                                       oracle_result.error_estimate};
        });
        for (const auto& r : t.rows)
            t.flagged += exceeds_tolerance(r[5], r[1], q);
        break;
    case Task::DivergenceDemo: {
        t.columns = {"cutoff", "I_vacuum", "I_absorbing", "err_vacuum", "err_absorbing"};
        const HalfSpaceGeometry g(*run.geometry.z0);
        t.rows = parallel_rows(grid.size(), threads, [&](std::size_t i) {
            const auto row = divergence_demo(cfg, g, {grid[i]}, q).front();
            return std::vector<double>{row.cutoff, row.vacuum, row.absorbing, row.vacuum_error,
                                       row.absorbing_error};
        });
        for (const auto& r : t.rows)
            t.flagged += exceeds_tolerance(r[3], r[1], q) || exceeds_tolerance(r[4], r[2], q);
        break;
    }
    case Task::LimitCheck:
        break;
    }
    return t;
}

std::string render(const RunConfig& run, const Table& table) {
    if (run.format == OutputFormat::Csv) {
        std::string out = units_line;
        out += "; task=" + task_name(run.task) + "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? "," : "") + table.columns[c];
        out += "\n";
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            std::string line;
            if (!table.labels.empty())
                line = table.labels[r];
            for (double v : table.rows[r])
                line += (line.empty() ? "" : ",") + format_number(v);
            out += line + "\n";
        }
        return out;
    }

    nlohmann::ordered_json j;
    j["task"] = task_name(run.task);
    j["units"] = "natural (hbar = c = 1); lengths in 1/omega, energies in omega, forces in omega^2";
    if (run.task == Task::LimitCheck) {
        auto regimes = nlohmann::ordered_json::array();
        bool all = true;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            const bool pass = row[4] == 1.0;
            all = all && pass;
            regimes.push_back({{"regime", table.labels[r]},
                               {"R", row[0]},
                               {"U", row[1]},
                               {"U_asymptote", row[2]},
                               {"ratio", row[3]},
                               {"pass", pass}});
        }
        j["tolerance"] = 0.01;
        j["regimes"] = regimes;
        j["all_pass"] = all;
    } else {
        j["columns"] = table.columns;
        j["points"] = table.rows.size();
        j["flagged"] = table.flagged;
        j["rows"] = table.rows;
    }
    return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

void run(const RunConfig& cfg, std::ostream& out) {
    if (cfg.output_path.empty())
        throw ConfigError("output.path: no output path (set it in the config or pass --output)");
    const int threads = thread_count_from_env();
    const Table table = compute(cfg, threads);
    write_atomic(cfg.output_path, render(cfg, table));
    out << task_name(cfg.task) << ": " << table.rows.size() << " rows written to " << cfg.output_path;
    if (cfg.task == Task::LimitCheck) {
        int passed = 0;
        for (const auto& r : table.rows)
            passed += r[4] == 1.0;
        out << " (" << passed << "/" << table.rows.size() << " regimes within 1%)";
    } else {
        out << " (" << table.flagged << " flagged)";
    }
    out << "\n";
}

std::string explain(Task task) {
    switch (task) {
    case Task::PairPotential:
        return R"(pair_potential: interaction of atom A (excited or ground) with ground-state atom B
inside a dilute absorbing gas with refractive index n(w) = sqrt(1 + 4 pi n0 alpha_g(w)).

  U = Re[ -(1/pi) Int_0^inf alpha_A(iu) alpha_gB(iu) (u^4/R^2)
            (1 + 2/x + 5/x^2 + 6/x^3 + 3/x^4) exp(-2x) du ]       x = n(iu) u R
      + Re[ -(4/9) |d_A|^2 |d_B|^2 w_B w_A^4 / ((w_B^2 - w_A^2 - i gamma_B w_A) R^2)
            (1 + 1/y^2 + 3/y^4) ] exp(-2 Im n(w_A) w_A R)        y = n(w_A) w_A R

  alpha_g(w) = (d^2/3) [1/(w_eg - w - i gamma/2) + 1/(w_eg + w + i gamma/2)]
  alpha_e(w) = (d^2/3) [1/(-w_eg - w - i gamma/2) + 1/(-w_eg + w + i gamma/2)]
The second (resonant) term is present only for excited A. Columns: R, U_total,
U_resonant, U_nonresonant, err (quadrature error of the nonresonant term).
)";
    case Task::PairForce:
        return R"(pair_force: F = -dU/dR for the pair potential (positive = repulsive).
  F_nonresonant: derivative taken under the imaginary-axis integral.
  F_resonant:    derivative of the resonant term including exp(-R/L_ph), L_ph = 1/(2 Im n(w_A) w_A).
  F_slab_model:  -Re[ (8/9) |d_A|^2 |d_B|^2 w_B w_A^4 / ((w_B^2 - w_A^2 - i gamma_B w_A) R^3)
                      (1 + 2/(w_A R)^2 + 9/(w_A R)^4) ]   (n = 1, no exponent)
  F_exponential: the slab-model potential times exp(-(R - r0)/L_ph), differentiated.
)";
    case Task::PlanarForce:
        return R"(planar_force: normal force on the atom from a gas half-space at distance z0,
restricted to a slab of thickness L_ph (slab model), positive = away from the gas.
  F_closed     = -(4 pi/9) n0 Re[K/D] [ 2 ln(1 + L/z0) + (1/w_A^2)(z0^-2 - (z0+L)^-2)
                                        + (3/(2 w_A^4))(z0^-4 - (z0+L)^-4) ]
  F_literature = same prefactor with [ ln(1 + L/z0) + (2/w_A^2)(...) + (3/(2 w_A^4))(...) ]
  F_near_law   = -(2 pi/3) |d_A|^2 |d_B|^2 w_B n0 (w_B^2 - w_A^2) / (((w_B^2 - w_A^2)^2 + (gamma_B w_A)^2) z0^4)
  F_far_law    = -|d_A|^2 w_A^2 (w_B^2 - w_A^2) / (3 gamma_B z0)     (z0 >> L_ph, density independent)
  F_oracle     = n0 Int F_slab(R) z/R dV over the slab, nested adaptive quadrature
with K = |d_A|^2 |d_B|^2 w_B w_A^4 and D = w_B^2 - w_A^2 - i gamma_B w_A.
)";
    case Task::HemisphereForce:
        return R"(hemisphere_force: axial force on an atom at the centre of a gas hemisphere with inner
radius R0, positive = away from the gas. The pair force carries exp(-(R - R0)/L_ph).
  F_oracle = n0 Int F_pair(R) cos(theta) dV = pi n0 Int_R0^inf R^2 F_pair(R) dR
  F_far    = -(4 pi/9) n0 Re[K/D] (1 + 2 L_ph/R0)                        (R0 >> L_ph, lambda)
  F_near   = -2 pi n0 |d_A|^2 |d_B|^2 w_B (w_B^2 - w_A^2)
             / (((w_B^2 - w_A^2)^2 + (gamma_B w_A)^2) R0^4)               (R0 << L_ph, lambda)
  F_near_literature: the commonly quoted near form with (w_B^2 - w_A^2)^2 and an extra w_A^4.
)";
    case Task::DivergenceDemo:
        return R"(divergence_demo: n0 times the pair potential summed over {z >= z0, |r| <= cutoff}.
  I_vacuum:    retarded vacuum potential -(4/9)|d_A|^2 |d_B|^2 w_A^4 w_B / ((w_B^2 - w_A^2) R^2);
               grows linearly with the cutoff (Int dV/R^2 = 2 pi [(C - z0) - z0 ln(C/z0)]).
  I_absorbing: resonant potential in the gas, suppressed by exp(-R/L_ph); converges once
               the cutoff exceeds a few L_ph.
)";
    case Task::LimitCheck:
        return R"(limit_check: compares the full potentials with their closed-form asymptotes,
pass when |U/U_asym - 1| < 1%. Small R = lambda_min/100, large R = 100 lambda_max.
  vdw_excited_resonant:      -(4/3) |d_A|^2 |d_B|^2 w_B / ((w_B^2 - w_A^2) R^6)
  retarded_excited_resonant: -(4/9) |d_A|^2 |d_B|^2 w_A^4 w_B / ((w_B^2 - w_A^2) R^2)
  vdw_ground:                -Re[(3/pi) Int_0^inf alpha_gA(iu) alpha_gB(iu) / (R^6 n(iu)^4) du]
  retarded_ground:           -23 alpha_gA(0) alpha_gB(0) / (4 pi n(0)^5 R^7)
)";
    }
    return "";
}

} // namespace cpgas::cli
