#include <catch2/catch_amalgamated.hpp>

#include "becell/becell.hpp"
