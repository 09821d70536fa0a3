#ifndef TSNAKE_CLI_HPP
#define TSNAKE_CLI_HPP

#include <array>
#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>

#include "tsnake/nilpotent.hpp"
#include "tsnake/privileged.hpp"
#include "tsnake/sim.hpp"
#include "tsnake/trident.hpp"
#include "tsnake/vector_field.hpp"

namespace tsnake {

inline constexpr int kExitOk = 0;
inline constexpr int kExitStrictFailure = 1;
inline constexpr int kExitError = 2;

/// Options shared by all subcommands.  Sources, later ones winning:
/// built-in defaults, TSNAKE_OUT_DIR (out_dir only), --config JSON, flags.
struct RunConfig {
    std::string model = "transformed";  // original | transformed | DSL file path
    Vec6 point = Vec6::Zero();
    double amplitude = kDefaultAmplitude;
    double omega = kDefaultOmega;
    int periods = 1;
    int steps = kDefaultStepsPerPeriod;  // per period
    std::string out_dir = ".";
    std::string emit = "both";  // csv | svg | both
    bool strict = false;
};

/// Merges the recognized keys into cfg; unknown keys or mistyped values
/// raise std::invalid_argument.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
/// Range checks (amplitude >= 0, omega > 0, periods/steps >= 1, known emit).
void validate_config(const RunConfig& cfg);

/// "a,b,c,d,e,f" -> point.
Vec6 parse_point(const std::string& text);

struct Model {
    std::string name;
    Parametrization par = Parametrization::Transformed;
    std::array<VectorField, 3> fields;
};

/// Accepts "original", "transformed", or a path to a DSL model file.
Model resolve_model(const std::string& name);

/// DSL model file: '#' comments and blank lines ignored; exactly three
/// remaining lines, each six ';'-separated component expressions.
std::array<VectorField, 3> parse_model_file(std::istream& is, const std::string& name);

/// Everything the privileged-coordinate pipeline produces at one point.
struct Analysis {
    Flag flag;
    std::vector<int> weights;
    FrameMatrix frame;
    FrameMatrix transform;
    PrivilegedReport privileged;
    std::array<WeightedField, 3> hat{};       // privileged coordinates
    std::array<VectorField, 3> hat_fields_y;  // same, as symbolic fields
    std::array<VectorField, 3> hat_fields_x;  // pulled back around the point
    std::array<FirstOrderReport, 3> first_order{};
    NilpotencyReport nilpotency;
    bool all_pass = false;
};

/// Runs growth vector -> adapted frame -> transform -> truncation ->
/// certificates.  Propagates NotBracketGenerating / RankDeficientFrame.
Analysis analyze_at(std::span<const VectorField> fields, const Vec6& p);

nlohmann::json analysis_json(const Model& model, const Vec6& p, const Analysis& a);

/// Shared entry point for main() and in-process tests; returns the exit
/// code.  Diagnostic failures (singular point, failing certificate) are
/// reported structurally and exit kExitOk unless --strict is set.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsnake

#endif  // TSNAKE_CLI_HPP
