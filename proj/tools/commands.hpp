#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "wwbnf/wwbnf.h"

namespace cli {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

// a C API call failed; carries the status for the exit code
struct ApiError : std::runtime_error {
  ApiError(wwbnf_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  wwbnf_status status;
};

struct Context {
  RunConfig& cfg;
  std::filesystem::path dir;
  std::uint64_t seed = 1;
  int threads = 1;
  json meta = json::object();  // command-specific metadata
  json outputs = json::array();
};

wwbnf_params read_params(RunConfig& cfg);

int cmd_resonances(Context& c);
int cmd_min_gap(Context& c);
int cmd_wilton(Context& c);
int cmd_coeffs(Context& c);
int cmd_verify(Context& c);
int cmd_bnf_flow(Context& c);
int cmd_ww_sim(Context& c);
int cmd_lifespan(Context& c);

}  // namespace cli
