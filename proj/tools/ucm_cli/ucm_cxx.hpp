#pragma once

// Minimal RAII layer over the C interface for the command-line front end.

#include <memory>
#include <stdexcept>
#include <string>

#include "ucm/ucm.h"

namespace ucm_cli {

class ApiError : public std::runtime_error {
 public:
  ApiError(ucm_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  ucm_status status() const noexcept { return status_; }

 private:
  ucm_status status_;
};

inline void check(ucm_status st) {
  if (st != UCM_OK) {
    std::string msg = ucm_status_string(st);
    const std::string detail = ucm_last_error();
    if (!detail.empty()) msg += ": " + detail;
    throw ApiError(st, msg);
  }
}

struct ProfileDeleter {
  void operator()(ucm_profile* p) const noexcept { ucm_profile_free(p); }
};
struct StatsDeleter {
  void operator()(ucm_trial_stats* s) const noexcept { ucm_trial_stats_free(s); }
};

using ProfilePtr = std::unique_ptr<ucm_profile, ProfileDeleter>;
using StatsPtr = std::unique_ptr<ucm_trial_stats, StatsDeleter>;

}  // namespace ucm_cli
