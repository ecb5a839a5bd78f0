#include "soliton/run.hpp"

int main(int argc, char** argv) { return soliton::run_cli(argc, argv); }
