#pragma once

#include <cstdint>
#include <iostream>
#include <string>

namespace cohost::wire {

// Long-running engine speaking the wire protocol: one event record per input
// line, action records written (and flushed) as each event is applied.
// Rejected lines produce an error record and leave the engine untouched.
// Returns a process exit status.
int serve_stream(std::istream& in, std::ostream& out);

// Accepts a single TCP connection on host:port and serves it, then returns.
int serve_listen(const std::string& host, std::uint16_t port);

}  // namespace cohost::wire
