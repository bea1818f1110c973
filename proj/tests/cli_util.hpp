#pragma once

// Helpers for driving the ftqkd binary from test executables.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace cli_util {

struct CmdResult {
    int exit_code;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline CmdResult run(const std::string& cli, const std::string& args) {
    const std::string out_file = "cli_stdout.tmp";
    const std::string err_file = "cli_stderr.tmp";
    const std::string cmd = "'" + cli + "' " + args + " > " + out_file + " 2> " + err_file;
    const int status = std::system(cmd.c_str());
    CmdResult result;
    result.exit_code = (status == -1) ? -1 : (WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    std::remove(out_file.c_str());
    std::remove(err_file.c_str());
    return result;
}

inline std::string cli_path_from_args(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") return argv[i + 1];
    if (const char* env = std::getenv("FTQKD_CLI")) return env;
    return {};
}

}  // namespace cli_util
