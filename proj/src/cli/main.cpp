#include "qrea/cli.hpp"

int main(int argc, char** argv) { return qrea::cli::run(argc, argv); }
