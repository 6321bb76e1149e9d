#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Run {
    int code = -1;
    std::string out;
};

// Runs a shell command, capturing stdout; stderr is left to the caller's redirection.
inline Run run(const std::string& command) {
    Run r;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string quote(const std::string& s) { return "'" + s + "'"; }

inline std::string binary() { return quote(AUVSOM_CLI_PATH); }

inline std::string data(const std::string& name) { return quote(std::string(AUVSOM_DATA_DIR) + "/" + name); }

}  // namespace cli
