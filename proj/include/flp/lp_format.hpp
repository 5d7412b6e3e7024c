#pragma once

#include <string>

#include "flp/model.hpp"

namespace flp {

// LP-file dialect text (Minimize / Subject To / Bounds / Binaries / End).
// Branch priorities travel in `\ priority <var> <n>` comment lines so that
// import_lp(export_lp(m)) reproduces the model structurally.
std::string export_lp(const MilpModel& model);
MilpModel import_lp(const std::string& text);

void save_lp(const MilpModel& model, const std::string& path);
MilpModel load_lp(const std::string& path);

}  // namespace flp
