#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace scbench::detail {

struct ProcessResult {
  int exit_code = -1;  // -1 when killed or not started
  bool timed_out = false;
  std::string out;
  std::string err;
  std::chrono::milliseconds elapsed{0};
};

// Spawns argv[0] (PATH lookup) in its own process group, capturing stdout and
// stderr. On timeout the whole group is killed. Throws Error(Io) when the
// process cannot be started at all.
ProcessResult run_process(const std::vector<std::string>& argv, std::chrono::milliseconds timeout,
                          const std::filesystem::path& cwd = {});

}  // namespace scbench::detail
