#include "cpgas/cli/config.hpp"

#include "cpgas/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cpgas::cli {

namespace {

using Section = std::map<std::string, std::string>;

const std::map<std::string, std::set<std::string>> allowed_keys = {
    {"system", {"omega_a", "d2_a", "gamma_a", "omega_b", "d2_b", "gamma_b", "n0",
                "dissimilarity_factor", "diluteness_threshold"}},
    {"task", {"name", "state", "index_prescription"}},
    {"sweep", {"variable", "min", "max", "points", "spacing", "unit"}},
    {"geometry", {"z0", "r0", "l_ph", "unit"}},
    {"quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "tail_decades", "radial_cutoff"}},
    {"output", {"path", "format"}},
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::map<std::string, Section> tokenize(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": malformed section header '" + line + "'");
            current = trim(line.substr(1, line.size() - 2));
            if (!allowed_keys.count(current))
                throw ConfigError(where + ": unknown section [" + current + "]");
            if (sections.count(current))
                throw ConfigError(where + ": duplicate section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
        if (current.empty())
            throw ConfigError(where + ": key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string path = current + "." + key;
        if (!allowed_keys.at(current).count(key))
            throw ConfigError(path + ": unknown key");
        if (value.empty())
            throw ConfigError(path + ": empty value");
        if (!sections[current].emplace(key, value).second)
            throw ConfigError(path + ": duplicate key");
    }
    return sections;
}

class Reader {
public:
    Reader(const std::map<std::string, Section>& sections, std::string name)
        : name_(std::move(name)) {
        if (auto it = sections.find(name_); it != sections.end())
            values_ = &it->second;
    }

    bool present() const { return values_ != nullptr; }

    std::optional<std::string> text(const std::string& key) const {
        if (!values_)
            return std::nullopt;
        auto it = values_->find(key);
        if (it == values_->end())
            return std::nullopt;
        return it->second;
    }

    std::string required_text(const std::string& key) const {
        auto v = text(key);
        if (!v)
            throw ConfigError(path(key) + ": required key is missing");
        return *v;
    }

    std::optional<double> number(const std::string& key) const {
        auto v = text(key);
        if (!v)
            return std::nullopt;
        double out = 0.0;
        const char* first = v->data();
        const char* last = v->data() + v->size();
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc() || ptr != last || !std::isfinite(out))
            throw ConfigError(path(key) + ": '" + *v + "' is not a finite number");
        return out;
    }

    double required_number(const std::string& key) const {
        auto v = number(key);
        if (!v)
            throw ConfigError(path(key) + ": required key is missing");
        return *v;
    }

    std::optional<long long> integer(const std::string& key) const {
        auto v = text(key);
        if (!v)
            return std::nullopt;
        long long out = 0;
        const char* last = v->data() + v->size();
        auto [ptr, ec] = std::from_chars(v->data(), last, out);
        if (ec != std::errc() || ptr != last)
            throw ConfigError(path(key) + ": '" + *v + "' is not an integer");
        return out;
    }

    std::string path(const std::string& key) const { return name_ + "." + key; }

private:
    std::string name_;
    const Section* values_ = nullptr;
};

template <class E>
E choose(const Reader& r, const std::string& key, const std::map<std::string, E>& options,
         std::optional<E> fallback) {
    auto v = r.text(key);
    if (!v) {
        if (!fallback)
            throw ConfigError(r.path(key) + ": required key is missing");
        return *fallback;
    }
    auto it = options.find(*v);
    if (it == options.end()) {
        std::string names;
        for (const auto& [k, _] : options)
            names += (names.empty() ? "" : ", ") + k;
        throw ConfigError(r.path(key) + ": '" + *v + "' is not one of {" + names + "}");
    }
    return it->second;
}

const std::map<std::string, LengthUnit> unit_names = {
    {"natural", LengthUnit::Natural}, {"lambda_a", LengthUnit::LambdaA}, {"l_ph", LengthUnit::MeanFreePath}};

double to_natural(double value, LengthUnit unit, const PairConfig& cfg, const std::string& where) {
    switch (unit) {
    case LengthUnit::Natural:
        return value;
    case LengthUnit::LambdaA:
        return value * wavelength(cfg.atom_a().omega());
    case LengthUnit::MeanFreePath:
        try {
            return value * cfg.mean_free_path();
        } catch (const LosslessMedium& e) {
            throw ConfigError(where + ": unit l_ph needs an absorbing medium (" + e.what() + ")");
        }
    }
    return value;
}

} // namespace

std::string task_name(Task task) {
    switch (task) {
    case Task::PairPotential: return "pair_potential";
    case Task::PairForce: return "pair_force";
    case Task::PlanarForce: return "planar_force";
    case Task::HemisphereForce: return "hemisphere_force";
    case Task::DivergenceDemo: return "divergence_demo";
    case Task::LimitCheck: return "limit_check";
    }
    return "unknown";
}

std::optional<Task> task_from_name(const std::string& name) {
    for (Task t : {Task::PairPotential, Task::PairForce, Task::PlanarForce, Task::HemisphereForce,
                   Task::DivergenceDemo, Task::LimitCheck})
        if (task_name(t) == name)
            return t;
    return std::nullopt;
}

std::string sweep_variable_for(Task task) {
    switch (task) {
    case Task::PairPotential:
    case Task::PairForce: return "R";
    case Task::PlanarForce: return "z0";
    case Task::HemisphereForce: return "R0";
    case Task::DivergenceDemo: return "cutoff";
    case Task::LimitCheck: return "";
    }
    return "";
}

PairConfig RunConfig::pair_config() const {
    const TwoLevelAtom a(system.omega_a, system.d2_a, system.gamma_a);
    const TwoLevelAtom b(system.omega_b, system.d2_b, system.gamma_b);
    const DiluteGasMedium medium(b, system.n0, system.diluteness_threshold);
    return PairConfig(a, b, medium, quad, prescription, system.dissimilarity_factor);
}

RunConfig parse_config(const std::string& text) {
    const auto sections = tokenize(text);
    RunConfig cfg;

    const Reader sys(sections, "system");
    if (!sys.present())
        throw ConfigError("system: section is missing");
    cfg.system.omega_a = sys.required_number("omega_a");
    cfg.system.d2_a = sys.required_number("d2_a");
    cfg.system.gamma_a = sys.required_number("gamma_a");
    cfg.system.omega_b = sys.required_number("omega_b");
    cfg.system.d2_b = sys.required_number("d2_b");
    cfg.system.gamma_b = sys.required_number("gamma_b");
    cfg.system.n0 = sys.required_number("n0");
    if (auto v = sys.number("dissimilarity_factor"))
        cfg.system.dissimilarity_factor = *v;
    if (auto v = sys.number("diluteness_threshold"))
        cfg.system.diluteness_threshold = *v;

    const Reader task(sections, "task");
    const std::string name = task.required_text("name");
    const auto parsed_task = task_from_name(name);
    if (!parsed_task)
        throw ConfigError("task.name: unknown task '" + name + "'");
    cfg.task = *parsed_task;
    const bool pair_task = cfg.task == Task::PairPotential || cfg.task == Task::PairForce;
    if (pair_task)
        cfg.state = choose<AtomAState>(task, "state",
                                       {{"excited", AtomAState::Excited}, {"ground", AtomAState::Ground}},
                                       std::nullopt);
    else if (task.text("state"))
        throw ConfigError("task.state: only used by pair_potential and pair_force");
    cfg.prescription = choose<IndexPrescription>(
        task, "index_prescription",
        {{"complex", IndexPrescription::Complex}, {"real_part", IndexPrescription::RealPart},
         {"vacuum", IndexPrescription::Vacuum}},
        IndexPrescription::Complex);

    const Reader quad(sections, "quadrature");
    try {
        const QuadratureSpec defaults;
        cfg.quad = QuadratureSpec(quad.number("rel_tol").value_or(defaults.rel_tol()),
                                  quad.number("abs_tol").value_or(defaults.abs_tol()),
                                  quad.integer("max_subdivisions").value_or(defaults.max_subdivisions()),
                                  quad.number("tail_decades").value_or(defaults.tail_decades()));
    } catch (const cpgas::Error& e) {
        throw ConfigError(std::string("quadrature: ") + e.what());
    }
    cfg.radial_cutoff = quad.number("radial_cutoff").value_or(20.0);
    if (!(cfg.radial_cutoff >= 5.0))
        throw ConfigError("quadrature.radial_cutoff: must be >= 5");

    // Physics validation through the library types.
    std::optional<PairConfig> pair;
    try {
        pair = cfg.pair_config();
    } catch (const DegenerateAtoms& e) {
        throw ConfigError(std::string("system: degenerate atoms are excluded: ") + e.what());
    } catch (const cpgas::Error& e) {
        throw ConfigError(std::string("system: ") + e.what());
    }

    const Reader geo(sections, "geometry");
    cfg.geometry.unit = choose<LengthUnit>(geo, "unit", unit_names, LengthUnit::Natural);
    if (cfg.geometry.unit == LengthUnit::MeanFreePath)
        throw ConfigError("geometry.unit: must be natural or lambda_a");
    auto geo_length = [&](const std::string& key) -> std::optional<double> {
        auto v = geo.number(key);
        if (!v)
            return std::nullopt;
        if (!(*v > 0.0))
            throw ConfigError(geo.path(key) + ": must be > 0");
        return to_natural(*v, cfg.geometry.unit, *pair, geo.path(key));
    };
    cfg.geometry.z0 = geo_length("z0");
    cfg.geometry.r0 = geo_length("r0");
    cfg.geometry.l_ph = geo_length("l_ph");
    if (cfg.geometry.z0 && cfg.task != Task::DivergenceDemo)
        throw ConfigError("geometry.z0: only used by divergence_demo (planar_force sweeps z0)");
    if (cfg.geometry.r0 && cfg.task != Task::PairForce)
        throw ConfigError("geometry.r0: only used by pair_force (exponential envelope)");
    if (cfg.geometry.l_ph && cfg.task != Task::PlanarForce && cfg.task != Task::HemisphereForce
        && cfg.task != Task::PairForce)
        throw ConfigError("geometry.l_ph: not used by task " + name);
    if (cfg.task == Task::DivergenceDemo && !cfg.geometry.z0)
        throw ConfigError("geometry.z0: required by divergence_demo");

    const bool needs_absorption = cfg.task == Task::DivergenceDemo
                                  || ((cfg.task == Task::PlanarForce || cfg.task == Task::HemisphereForce)
                                      && !cfg.geometry.l_ph)
                                  || (cfg.task == Task::PairForce && cfg.geometry.r0 && !cfg.geometry.l_ph);
    if (needs_absorption && (cfg.system.n0 == 0.0 || cfg.system.gamma_b == 0.0))
        throw ConfigError("system.n0: task " + name + " needs an absorbing medium (n0 > 0, gamma_b > 0)");
    if ((cfg.task == Task::PlanarForce || cfg.task == Task::HemisphereForce) && cfg.system.n0 == 0.0)
        throw ConfigError("system.n0: task " + name + " integrates over the gas and needs n0 > 0");

    const Reader sweep(sections, "sweep");
    if (cfg.task == Task::LimitCheck) {
        if (sweep.present())
            throw ConfigError("sweep: limit_check evaluates fixed separations and takes no sweep");
    } else {
        if (!sweep.present())
            throw ConfigError("sweep: section is missing");
        SweepSpec s;
        s.variable = sweep.required_text("variable");
        const std::string expected = sweep_variable_for(cfg.task);
        if (s.variable != expected)
            throw ConfigError("sweep.variable: task " + name + " sweeps '" + expected + "', got '"
                              + s.variable + "'");
        s.spacing = choose<Spacing>(sweep, "spacing",
                                    {{"linear", Spacing::Linear}, {"log", Spacing::Logarithmic}},
                                    std::nullopt);
        s.unit = choose<LengthUnit>(sweep, "unit", unit_names, LengthUnit::Natural);
        const auto points = sweep.integer("points");
        if (!points)
            throw ConfigError("sweep.points: required key is missing");
        if (*points < 2 || *points > 1000000)
            throw ConfigError("sweep.points: must be between 2 and 1000000");
        s.points = static_cast<int>(*points);
        const double lo = sweep.required_number("min");
        const double hi = sweep.required_number("max");
        if (!(lo < hi))
            throw ConfigError("sweep: min must be < max");
        if (!(lo > 0.0))
            throw ConfigError("sweep.min: lengths must be > 0");
        s.min = to_natural(lo, s.unit, *pair, "sweep.unit");
        s.max = to_natural(hi, s.unit, *pair, "sweep.unit");
        if (cfg.task == Task::DivergenceDemo && !(s.min > *cfg.geometry.z0))
            throw ConfigError("sweep.min: every cutoff must exceed geometry.z0");
        cfg.sweep = s;
    }

    const Reader out(sections, "output");
    if (auto p = out.text("path"))
        cfg.output_path = *p;
    cfg.format = choose<OutputFormat>(out, "format",
                                      {{"csv", OutputFormat::Csv}, {"json-summary", OutputFormat::JsonSummary}},
                                      OutputFormat::Csv);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace cpgas::cli
