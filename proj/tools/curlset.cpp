#include "curlset/cli.hpp"

int main(int argc, char** argv) { return curlset::dispatch(argc, argv); }
