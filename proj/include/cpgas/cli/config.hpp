#pragma once

#include "cpgas/core_types.hpp"
#include "cpgas/pair_potential.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace cpgas::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Task { PairPotential, PairForce, PlanarForce, HemisphereForce, DivergenceDemo, LimitCheck };
enum class Spacing { Linear, Logarithmic };
// Unit in which sweep and geometry lengths are written in the config file.
enum class LengthUnit { Natural, LambdaA, MeanFreePath };
enum class OutputFormat { Csv, JsonSummary };

struct SweepSpec {
    std::string variable;
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    Spacing spacing = Spacing::Linear;
    LengthUnit unit = LengthUnit::Natural;
};

struct SystemParams {
    double omega_a = 0.0;
    double d2_a = 0.0;
    double gamma_a = 0.0;
    double omega_b = 0.0;
    double d2_b = 0.0;
    double gamma_b = 0.0;
    double n0 = 0.0;
    double dissimilarity_factor = default_dissimilarity_factor;
    double diluteness_threshold = DiluteGasMedium::default_diluteness_threshold;
};

struct GeometryParams {
    std::optional<double> z0;
    std::optional<double> r0;
    std::optional<double> l_ph;
    LengthUnit unit = LengthUnit::Natural;
};

struct RunConfig {
    SystemParams system;
    Task task = Task::PairPotential;
    AtomAState state = AtomAState::Excited;
    IndexPrescription prescription = IndexPrescription::Complex;
    std::optional<SweepSpec> sweep;
    GeometryParams geometry;
    QuadratureSpec quad;
    double radial_cutoff = 20.0;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    PairConfig pair_config() const;
};

// Strict line-oriented "key = value" format with [section] headers; '#' starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string task_name(Task task);
std::optional<Task> task_from_name(const std::string& name);
std::string sweep_variable_for(Task task);

} // namespace cpgas::cli
