#include "cohost/serve.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <sstream>

#include "cohost/engine.hpp"
#include "cohost/wire.hpp"

namespace cohost::wire {

namespace {

// Events are applied strictly in read order, so the action stream is ordered
// by the events that caused it.
void handle_line(Engine& engine, millis_t& last_t, const std::string& line, std::ostream& out) {
    if (line.empty()) return;
    try {
        const InputEvent event = decode_event(line);
        const auto actions = engine.step(event);
        for (const auto& action : actions) {
            last_t = action.t;
            out << encode_action(action) << "\n";
        }
    } catch (const WireError& err) {
        out << error_record(last_t, err.field, err.what()) << "\n";
    } catch (const MeetingError& err) {
        out << error_record(last_t, "event", err.what()) << "\n";
    }
    out.flush();
}

}  // namespace

int serve_stream(std::istream& in, std::ostream& out) {
    Engine engine;
    millis_t last_t = 0;
    std::string line;
    while (std::getline(in, line)) {
        handle_line(engine, last_t, line, out);
    }
    return 0;
}

int serve_listen(const std::string& host, std::uint16_t port) {
    const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) {
        std::cerr << "serve: cannot create socket: " << std::strerror(errno) << "\n";
        return 1;
    }
    int reuse = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        std::cerr << "serve: invalid listen address '" << host << "'\n";
        ::close(listener);
        return 1;
    }
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
        ::listen(listener, 1) < 0) {
        std::cerr << "serve: cannot listen on " << host << ":" << port << ": "
                  << std::strerror(errno) << "\n";
        ::close(listener);
        return 1;
    }

    const int conn = ::accept(listener, nullptr, nullptr);
    ::close(listener);
    if (conn < 0) {
        std::cerr << "serve: accept failed: " << std::strerror(errno) << "\n";
        return 1;
    }

    Engine engine;
    millis_t last_t = 0;
    std::string pending;
    char buf[4096];
    for (;;) {
        const ssize_t n = ::read(conn, buf, sizeof(buf));
        if (n <= 0) break;
        pending.append(buf, static_cast<std::size_t>(n));
        std::size_t pos;
        while ((pos = pending.find('\n')) != std::string::npos) {
            const std::string line = pending.substr(0, pos);
            pending.erase(0, pos + 1);
            std::ostringstream reply;
            handle_line(engine, last_t, line, reply);
            const std::string text = reply.str();
            std::size_t written = 0;
            while (written < text.size()) {
                const ssize_t w = ::write(conn, text.data() + written, text.size() - written);
                if (w <= 0) {
                    ::close(conn);
                    return 0;
                }
                written += static_cast<std::size_t>(w);
            }
        }
    }
    ::close(conn);
    return 0;
}

}  // namespace cohost::wire
