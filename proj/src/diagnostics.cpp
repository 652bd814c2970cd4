#include "henderson/diagnostics.hpp"

#include <atomic>
#include <mutex>
#include <ostream>

namespace henderson {

namespace {
std::atomic<std::ostream*> g_stream{nullptr};
std::mutex g_mutex;
}  // namespace

void set_diagnostics_stream(std::ostream* os) { g_stream.store(os); }

void diag(const nlohmann::json& record) {
  std::ostream* os = g_stream.load();
  if (!os) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  *os << record.dump() << '\n';
}

void warn(const std::string& what, nlohmann::json detail) {
  detail["stage"] = "warning";
  detail["message"] = what;
  diag(detail);
}

}  // namespace henderson
