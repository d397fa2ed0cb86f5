#pragma once

#include "drs/bench.hpp"
#include "drs/channel.hpp"
#include "drs/code.hpp"
#include "drs/decoder.hpp"
#include "drs/errors.hpp"
#include "drs/field.hpp"
#include "drs/io.hpp"
#include "drs/verify.hpp"
