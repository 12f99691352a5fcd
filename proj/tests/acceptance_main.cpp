#include "becell/becell.hpp"

int main() { return 0; }
