#include "assertgen/util/process.hpp"

#include "assertgen/error.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char** environ;

namespace assertgen::util {

namespace {

using Clock = std::chrono::steady_clock;

struct Pipe {
    int read = -1;
    int write = -1;

    Pipe()
    {
        int fds[2];
        if (::pipe2(fds, O_CLOEXEC) != 0) {
            throw Error(ErrorCode::Io, std::string("pipe: ") + std::strerror(errno));
        }
        read = fds[0];
        write = fds[1];
    }
};

void close_fd(int& fd)
{
    if (fd >= 0) {
        ::close(fd);
        fd = -1;
    }
}

// Spawns /bin/sh -c script in its own process group with the given fds.
pid_t spawn_shell(const std::string& script, int stdin_fd, int stdout_fd, int stderr_fd)
{
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, stdin_fd, STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, stdout_fd, STDOUT_FILENO);
    if (stderr_fd >= 0) {
        posix_spawn_file_actions_adddup2(&actions, stderr_fd, STDERR_FILENO);
    }
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    std::string sh = "/bin/sh";
    std::string dash_c = "-c";
    std::string body = script;
    char* argv[] = {sh.data(), dash_c.data(), body.data(), nullptr};
    pid_t pid = -1;
    int rc = ::posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) {
        throw Error(ErrorCode::Io, std::string("cannot spawn /bin/sh: ") + std::strerror(rc));
    }
    return pid;
}

int remaining_ms(Clock::time_point deadline)
{
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    return left < 0 ? 0 : static_cast<int>(std::min<long long>(left, 1 << 30));
}

}  // namespace

std::string shell_quote(std::string_view s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

CommandResult run_shell(const std::string& command, std::chrono::milliseconds timeout, const std::string& cwd)
{
    std::string script = cwd.empty() ? command : "cd " + shell_quote(cwd) + " && " + command;
    Pipe out;
    int devnull = ::open("/dev/null", O_RDONLY | O_CLOEXEC);
    pid_t pid;
    try {
        pid = spawn_shell(script, devnull, out.write, out.write);
    } catch (...) {
        ::close(devnull);
        close_fd(out.read);
        close_fd(out.write);
        throw;
    }
    ::close(devnull);
    close_fd(out.write);

    CommandResult res;
    auto deadline = Clock::now() + timeout;
    char buf[4096];
    bool eof = false;
    while (!eof) {
        pollfd pfd{out.read, POLLIN, 0};
        int ready = ::poll(&pfd, 1, remaining_ms(deadline));
        if (ready < 0 && errno == EINTR) {
            continue;
        }
        if (ready == 0) {
            res.timed_out = true;
            break;
        }
        ssize_t n = ::read(out.read, buf, sizeof buf);
        if (n > 0) {
            res.output.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0 || errno != EINTR) {
            eof = true;
        }
    }
    close_fd(out.read);

    int status = 0;
    while (!res.timed_out) {
        pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            break;
        }
        if (Clock::now() >= deadline) {
            res.timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    if (res.timed_out) {
        ::kill(-pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        return res;
    }
    if (WIFEXITED(status)) {
        res.exit_code = WEXITSTATUS(status);
    } else {
        res.signaled = true;
    }
    return res;
}

LineProcess::LineProcess(const std::string& command)
{
    static const bool sigpipe_ignored = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)sigpipe_ignored;

    Pipe to_child;
    Pipe from_child;
    try {
        pid_ = spawn_shell("exec " + command, to_child.read, from_child.write, -1);
    } catch (const Error& e) {
        for (int fd : {to_child.read, to_child.write, from_child.read, from_child.write}) {
            ::close(fd);
        }
        throw Error(ErrorCode::BackendUnavailable, e.what());
    }
    ::close(to_child.read);
    ::close(from_child.write);
    in_fd_ = to_child.write;
    out_fd_ = from_child.read;
}

LineProcess::~LineProcess()
{
    close_fd(in_fd_);
    close_fd(out_fd_);
    if (!reaped_) {
        kill();
    }
}

bool LineProcess::write_line(std::string_view line)
{
    std::string data(line);
    data += '\n';
    std::size_t off = 0;
    while (off < data.size()) {
        ssize_t n = ::write(in_fd_, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            return false;
        }
        off += static_cast<std::size_t>(n);
    }
    return true;
}

LineProcess::ReadStatus LineProcess::read_line(std::string& line, std::chrono::milliseconds timeout)
{
    auto deadline = Clock::now() + timeout;
    for (;;) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return ReadStatus::Line;
        }
        pollfd pfd{out_fd_, POLLIN, 0};
        int ready = ::poll(&pfd, 1, remaining_ms(deadline));
        if (ready < 0 && errno == EINTR) {
            continue;
        }
        if (ready == 0) {
            return ReadStatus::Timeout;
        }
        char buf[4096];
        ssize_t n = ::read(out_fd_, buf, sizeof buf);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            if (!buffer_.empty()) {
                line = std::move(buffer_);
                buffer_.clear();
                return ReadStatus::Line;
            }
            return ReadStatus::Eof;
        }
        buffer_.append(buf, static_cast<std::size_t>(n));
    }
}

std::optional<int> LineProcess::exit_status()
{
    if (!reaped_) {
        // the child closed stdout; give it a moment to finish exiting
        for (int i = 0; i < 200 && !reaped_; ++i) {
            if (::waitpid(pid_, &status_, WNOHANG) == pid_) {
                reaped_ = true;
            } else {
                std::this_thread::sleep_for(std::chrono::milliseconds(5));
            }
        }
    }
    if (reaped_ && WIFEXITED(status_)) {
        return WEXITSTATUS(status_);
    }
    return std::nullopt;
}

void LineProcess::kill()
{
    if (pid_ > 0 && !reaped_) {
        ::kill(-pid_, SIGKILL);
        ::waitpid(pid_, &status_, 0);
        reaped_ = true;
    }
}

}  // namespace assertgen::util
