// CSV/JSON readers and writers for signals, kernel archives, group
// functions, coefficient fields and the small report records.
#pragma once

#include <string>

#include <json.hpp>

#include "besov/discretization.hpp"
#include "besov/funcnorms.hpp"
#include "besov/group.hpp"
#include "besov/transform.hpp"

namespace besov::io {

using nlohmann::json;

/// `x,re,im` (1-D) or `x,y,re,im` (2-D), one row per sample, row-major.
std::string signal_csv(const SampledSignal& f);
SampledSignal parse_signal_csv(const std::string& text);
void write_signal_csv(const std::string& path, const SampledSignal& f);
SampledSignal read_signal_csv(const std::string& path);

/// `<stem>_space.csv`, `<stem>_freq.csv` (`xi[,eta],re,im`) and `<stem>.json`
/// with {id, L, K, N_dec, eps, role, grid}.
void write_kernel_archive(const std::string& stem, const Kernel& g);
Kernel read_kernel_archive(const std::string& stem);

/// `j,t,x,re,im` (`j,t,x,y,re,im` in 2-D); j is the ladder node label m.
std::string group_function_csv(const GroupFunction& F);

/// `c,j,k,re,im` (`c,j,k0,k1,re,im` in 2-D).
std::string coefficient_csv(const CoeffField& c);

/// `space,side,z,r,predicted,measured,ratio`
std::string scaling_csv(const std::vector<ScalingCheck>& rows);

json to_json(const GridSpec& g);
json to_json(const ScaleLadder& l);
json to_json(const NormParams& np);
json to_json(const KernelMeta& m);
json to_json(const DecayProfile& d);
json to_json(const NormReport& r);
std::string norm_report_csv(const NormReport& r);

GridSpec grid_from_json(const json& j);
ScaleLadder ladder_from_json(const json& j);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Shortest round-trip decimal form of a double.
std::string num(double v);

}  // namespace besov::io
