#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rotqfi/anticoherence.hpp"
#include "rotqfi/baselines.hpp"
#include "rotqfi/designer.hpp"
#include "rotqfi/majorana.hpp"
#include "rotqfi/qfim.hpp"
#include "rotqfi/scan.hpp"

namespace rotqfi {

using json = nlohmann::ordered_json;

// {"n": N, "amplitudes": [[re, im], ...]}
json to_json(const SpinState& state);
SpinState state_from_json(const json& j);

// {"points": [{"theta": t, "phi": p, "mult": k}, ...]}; "mult" defaults to 1.
json to_json(const Constellation& c);
Constellation constellation_from_json(const json& j);

// {"S", "S2" (real part), "S2_imag", "order", "tol", "t_max", "capped", "constants"}
json to_json(const MomentReport& r);

// Matrix, det, inverse and trace_of_inverse (null when singular), "singular".
json to_json(const QfimReport& r, bool singular);

// {"N", "support", "p", "free"} plus "vertices" when the polytope was enumerated.
json to_json(const SupportSolution& s);
json to_json(const SupportResult& r);

// 12 significant digits, "." separator, "inf"/"-inf"/"nan" literals.
std::string format_number(double x);

// angle1,angle2,angle3,det,trace_inv
std::string scan_csv(const std::vector<ScanRow>& rows);
// scheme,N,angle1,angle2,bound
std::string compare_csv(const std::vector<ComparisonRow>& rows);

// Three comma-separated axes, each "v" or "start:stop:count". Values are
// multiplied by scale (pi/180 for degree input).
ScanGrid parse_grid(std::string_view spec, double scale = 1.0);
// Comma-separated reals, multiplied by scale.
std::vector<double> parse_list(std::string_view spec, double scale = 1.0);
std::vector<int> parse_int_list(std::string_view spec);

json read_json_file(const std::string& path);
// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace rotqfi
