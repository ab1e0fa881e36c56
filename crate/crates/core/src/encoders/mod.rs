//! Constructive encoders at the capacity of each (family, scenario) pair.

mod constructions;
mod punctured;

pub use punctured::encode_punctured;

use crate::bounds::{min_cells, FamilyId};
use crate::encoding::Encoding;
use crate::error::{Error, Result};
use crate::family::{FamilyKind, FamilySpec};
use crate::symbol::{AlphabetCode, Scenario};

use constructions as c;

/// Builds an encoding of a named family with the minimal number of cells.
pub fn encode(spec: &FamilySpec, scenario: Scenario) -> Result<Encoding> {
    let FamilyKind::Named(family) = spec.kind else {
        return Err(Error::Domain(format!(
            "no construction for family {}; use encode_punctured or the oracle",
            spec.kind
        )));
    };
    if !family.supports(scenario) {
        return Err(Error::unsupported(family, scenario));
    }
    let q = spec.q;
    let n = min_cells(family, scenario, q)?;
    let members = spec.members()?;
    let (inputs, states) = match family {
        FamilyId::E => encode_e(q, n, scenario),
        FamilyId::N => encode_n(q, n, scenario),
        FamilyId::G => {
            let code = threshold_g(q, n, scenario);
            (code.inputs, code.ge)
        }
        FamilyId::L => threshold_g(q, n, scenario).reflect(),
        FamilyId::GL => {
            let code = threshold_gl(q, n, scenario);
            let mut states = code.ge;
            states.extend(code.le.expect("G∪L code carries L states"));
            (code.inputs, states)
        }
        FamilyId::F => {
            let value = |i: usize, x: usize| spec.value(&members[i], x);
            let m = members.len();
            match scenario {
                Scenario::OS => c::one_hot_input(q, m, value),
                Scenario::SR | Scenario::RR => c::paired(q, n, m, value),
                _ => c::simple_star_input(q, m, value),
            }
        }
    };
    Encoding::new(
        spec.kind.clone(),
        scenario,
        inputs,
        members.into_iter().zip(states).collect(),
    )
}

fn encode_e(q: usize, n: usize, scenario: Scenario) -> (c::Words, c::Words) {
    if scenario.input == AlphabetCode::R || scenario.state == AlphabetCode::R {
        c::e_antichain(q, n, scenario)
    } else {
        c::e_binary(q, n)
    }
}

fn encode_n(q: usize, n: usize, scenario: Scenario) -> (c::Words, c::Words) {
    match scenario {
        Scenario::OS | Scenario::SO if q == 2 => c::n_binary_pair(),
        Scenario::OS => c::n_star_state(q),
        Scenario::SO => c::n_star_input(q),
        _ => c::paired(q, n, q, |t, x| x != t),
    }
}

fn threshold_g(q: usize, n: usize, scenario: Scenario) -> c::Threshold {
    match scenario {
        Scenario::OS => c::thermometer(q),
        Scenario::SO => c::thermometer(q).dual(),
        Scenario::SS => c::g_star_table(q, n),
        Scenario::RS if n <= 2 && q > 2 * n => c::threshold_paired(q, n).dual(),
        Scenario::RS => c::g_star_table(q, n),
        _ => c::threshold_paired(q, n),
    }
}

fn threshold_gl(q: usize, n: usize, scenario: Scenario) -> c::Threshold {
    match scenario {
        Scenario::SO => c::gl_star_input(q),
        Scenario::OS => c::thermometer(q),
        Scenario::SS | Scenario::RS => c::gl_star_table(q, n),
        _ => c::threshold_paired(q, n),
    }
}
