// Single translation unit for the amalgamated Catch2 sources.
#include <catch2/catch_amalgamated.cpp>
