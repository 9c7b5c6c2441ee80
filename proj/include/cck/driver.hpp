// File-level driver behind the command-line interface.
//
// Each command loads one vernacular file, replays its items against a fresh
// context, and reports diagnostics as `file:line:col: error: rule: message`
// on the error stream.  Exit codes: 0 full success, 1 any rejected item
// (parse or type error), 2 usage or I/O error.

#pragma once

#include <ostream>
#include <string>

namespace cck {

struct DriverOptions {
  long long max_steps = 100000;  // reduction fuel
  int depth = 32;                // fixpoint iteration bound
  int rank = 2;                  // finite universe rank
  int samples = 64;              // function-space membership samples
  std::string term;              // norm/model: term to elaborate
  std::string type_name;         // model: membership is tested against this type
  std::string report_path;       // optional flat key=value report
};

int cmd_check(const std::string& path, const DriverOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_norm(const std::string& path, const DriverOptions& opts, std::ostream& out,
             std::ostream& err);
int cmd_model(const std::string& path, const DriverOptions& opts, std::ostream& out,
              std::ostream& err);

}  // namespace cck
