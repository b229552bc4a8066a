#include "hdt/app.hpp"

int main(int argc, char** argv) { return hdt::app::main(argc, argv); }
