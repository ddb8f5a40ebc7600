#pragma once

#include "hwsep/analysis.hpp"
#include "hwsep/bloch.hpp"
#include "hwsep/criteria.hpp"
#include "hwsep/hw_basis.hpp"
#include "hwsep/linalg.hpp"
#include "hwsep/states.hpp"
