// Copyright 2026 The qopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qopt/bench.h"
#include "qopt/qlearn.h"

namespace qopt::cli {

/// Entry point shared by the qopt binary and the tests. Returns the process
/// exit code: 0 when every requested artifact was written, 2 for usage or
/// range errors, 1 for everything else.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Real number with 10 significant digits, always carrying a decimal point
/// or exponent so it reads back as a float.
std::string format_real(double x);

/// Per-epoch series:
///   epoch,steps,applied,cum_reward,final_depth,final_gate_count,final_str
void write_epoch_csv(std::ostream &out, const std::vector<EpochRecord> &records);

std::string metrics_json(const Metrics &m);
std::string summary_json(const SummaryRow &row);
std::string aggregate_markdown(const std::vector<SummaryRow> &rows);

}  // namespace qopt::cli
