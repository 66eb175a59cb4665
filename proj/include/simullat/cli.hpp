// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace simullat::cli {

// Fully resolved configuration of one invocation; echoed into reports.
struct RunConfig {
    std::string subcommand;
    std::string logs;
    std::string refs;
    std::vector<std::string> manifests;
    std::vector<std::string> segmentations;
    std::string align_tables;
    std::string runs_dir;
    std::string metrics;
    std::string lang_mode = "space";
    bool seconds = false;
    bool fix_monotonic = false;
    std::uint64_t seed = 20250101;
    std::size_t bootstrap_n = 10000;
    unsigned threads = 1;
    double anomaly_threshold = 0.15;
    std::string mw_samples = "segment";
    std::string system_id;
    std::string testset_id = "default";
    std::string language_pair = "default";
    std::string out;
    std::string format = "json";
};

inline constexpr int kSchemaVersion = 1;

// Runs one command line (args excludes the program name). Returns the
// process exit code: 0 on success, 1 on data errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simullat::cli
