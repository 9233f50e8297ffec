#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace assertgen::util {

/// Single-quotes `s` for /bin/sh.
std::string shell_quote(std::string_view s);

struct CommandResult {
    int exit_code = -1;  // valid when !signaled && !timed_out
    bool signaled = false;
    bool timed_out = false;
    std::string output;  // stdout and stderr, interleaved
};

/// Runs `/bin/sh -c command` in `cwd` (inherited when empty), killing the
/// process group after `timeout`. Throws Error(Io) if the shell cannot start.
CommandResult run_shell(const std::string& command, std::chrono::milliseconds timeout, const std::string& cwd = "");

/// Long-lived child connected through stdin/stdout pipes; stderr is
/// inherited. The child is killed and reaped on destruction.
class LineProcess {
public:
    /// Starts `/bin/sh -c 'exec <command>'`. Throws Error(BackendUnavailable)
    /// if the shell cannot be spawned.
    explicit LineProcess(const std::string& command);
    ~LineProcess();
    LineProcess(const LineProcess&) = delete;
    LineProcess& operator=(const LineProcess&) = delete;

    /// False if the child has gone away (EPIPE).
    bool write_line(std::string_view line);

    enum class ReadStatus { Line, Eof, Timeout };
    /// Reads one `\n`-terminated line (terminator stripped).
    ReadStatus read_line(std::string& line, std::chrono::milliseconds timeout);

    /// Reaps the child if it exited; exit status, or nullopt if still running
    /// or killed by a signal.
    std::optional<int> exit_status();

    void kill();

private:
    pid_t pid_ = -1;
    int in_fd_ = -1;   // child's stdin
    int out_fd_ = -1;  // child's stdout
    std::string buffer_;
    bool reaped_ = false;
    int status_ = 0;
};

}  // namespace assertgen::util
