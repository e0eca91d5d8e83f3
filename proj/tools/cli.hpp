#ifndef HOWSON_TOOLS_CLI_HPP_
#define HOWSON_TOOLS_CLI_HPP_

#include <iosfwd>

namespace howson::cli {

  //! Runs the command line tool. Returns 0 on success, 1 on a domain error
  //! and 2 on a usage error.
  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace howson::cli

#endif  // HOWSON_TOOLS_CLI_HPP_
