#include "solenoid_lab/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

#include "solenoid_lab/error.hpp"

namespace solenoid_lab {

unsigned thread_cap() {
  const char* env = std::getenv("SOLENOID_LAB_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  unsigned value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end || value == 0)
    throw LabError(ErrorCode::InvalidArgument,
                   std::string("SOLENOID_LAB_THREADS must be a positive integer, got '") + env + "'");
  return value;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk) {
  if (n == 0) return;
  min_chunk = std::max<std::size_t>(min_chunk, 1);
  std::size_t workers = std::min<std::size_t>(thread_cap(), (n + min_chunk - 1) / min_chunk);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    std::size_t slot = 0;
    for (std::size_t begin = 0; begin < n; begin += chunk, ++slot) {
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&body, &errors, slot, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          errors[slot] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace solenoid_lab
