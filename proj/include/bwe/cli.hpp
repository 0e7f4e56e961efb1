#ifndef BWE_CLI_HPP
#define BWE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bwe::cli {

// Exit codes: 0 success, 1 usage error, 2 I/O or format error,
// 3 numeric failure (non-finite detected).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv);

} // namespace bwe::cli

#endif
