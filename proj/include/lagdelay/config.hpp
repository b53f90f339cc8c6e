// Flat key=value experiment configuration files.
#pragma once

#include <lagdelay/experiments.hpp>

#include <string>

namespace lagdelay {

/// Parses a config file. Keys mirror McConfig; the noise block selects the
/// model via noise.kind = white | colored | laguerre | laguerre-from-colored
/// (the last builds the coefficient covariance from the colored model's
/// time covariance at the configured T). Unknown or duplicate keys and
/// malformed values are errors.
McConfig load_config(const std::string& path);

/// Same parser over an in-memory document; `origin` names it in errors.
McConfig parse_config_text(const std::string& text,
                           const std::string& origin);

/// Canonical serialization used for the config digest: fixed key order,
/// full-precision values, converted noise model written out field by field.
std::string canonical_config_text(const McConfig& config);

}  // namespace lagdelay
