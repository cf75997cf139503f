#pragma once

#include "charclass/oracle/random.hpp"
