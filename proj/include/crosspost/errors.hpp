#pragma once

#include <stdexcept>
#include <string>

namespace crosspost {

// Error categories map 1:1 onto CLI exit codes (see tools/).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crosspost
