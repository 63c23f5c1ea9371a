#ifndef POWSER_CLI_HPP
#define POWSER_CLI_HPP
namespace powser {
inline int cli_dispatch(int, char**) { return 2; } // placeholder
}
#endif
