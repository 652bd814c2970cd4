#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace henderson {

// JSON-lines diagnostics. Silent unless a stream is installed.
void set_diagnostics_stream(std::ostream* os);
void diag(const nlohmann::json& record);
void warn(const std::string& what, nlohmann::json detail = nlohmann::json::object());

}  // namespace henderson
