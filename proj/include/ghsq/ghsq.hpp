#pragma once

#include "ghsq/density.hpp"
#include "ghsq/discord.hpp"
#include "ghsq/errors.hpp"
#include "ghsq/ghs_model.hpp"
#include "ghsq/json_io.hpp"
#include "ghsq/obesity.hpp"
#include "ghsq/steering.hpp"
#include "ghsq/sweep.hpp"
