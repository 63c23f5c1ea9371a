#include "powser/cli.hpp"

int main(int argc, char** argv) { return powser::cli_dispatch(argc, argv); }
