//! The JSON game file format.
//!
//! ```json
//! {
//!   "name": "coordination",
//!   "players": ["1", "2"],
//!   "strategies": {
//!     "1": {"elements": ["0", "1"], "order": [["0", "1"]]},
//!     "2": {"elements": ["0", "1"], "order": [["0", "1"]]}
//!   },
//!   "feasible": "product",
//!   "payoffs": {
//!     "1": {"0|0": "1", "0|1": "0", "1|0": "0", "1|1": "1"},
//!     "2": {"0|0": "1", "0|1": "0", "1|0": "0", "1|1": "1"}
//!   }
//! }
//! ```
//!
//! `feasible` is either `"product"` or a list of profiles, each a list of
//! strategy names in player order. Payoff keys join strategy names with `|`
//! in player order; values are strings holding an integer, a fraction `p/q`,
//! or a decimal. JSON numbers are rejected so that no payoff passes through
//! a float.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::game::{Feasible, Game};
use crate::poset::{Poset, DEFAULT_PRODUCT_CAP};
use crate::rational::Rational;

fn parse_err(at: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse {
        at: at.into(),
        msg: msg.into(),
    }
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(at, "expected a string"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(at, "expected an array"))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(at, "expected an object"))
}

fn pointer_escape(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

pub fn load_game(text: &str) -> Result<Game> {
    load_game_with_cap(text, DEFAULT_PRODUCT_CAP)
}

/// Parses and validates a game document.
///
/// Syntax errors report line and column; semantic errors report the JSON
/// pointer of the offending value.
pub fn load_game_with_cap(text: &str, product_cap: usize) -> Result<Game> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let top = as_object(&doc, "/")?;
    for key in top.keys() {
        if !matches!(
            key.as_str(),
            "name" | "players" | "strategies" | "feasible" | "payoffs"
        ) {
            return Err(parse_err(
                format!("/{}", pointer_escape(key)),
                "unknown key",
            ));
        }
    }
    let field = |k: &str| {
        top.get(k)
            .ok_or_else(|| parse_err("/", format!("missing key \"{k}\"")))
    };
    let name = match top.get("name") {
        None => None,
        Some(v) => Some(as_str(v, "/name")?.to_string()),
    };

    let mut players = Vec::new();
    for (k, v) in as_array(field("players")?, "/players")?.iter().enumerate() {
        let at = format!("/players/{k}");
        let p = as_str(v, &at)?.to_string();
        if players.contains(&p) {
            return Err(parse_err(at, format!("duplicate player \"{p}\"")));
        }
        players.push(p);
    }
    if players.is_empty() {
        return Err(Error::EmptyPlayerSet);
    }

    let strat_obj = as_object(field("strategies")?, "/strategies")?;
    if let Some(extra) = strat_obj.keys().find(|k| !players.contains(k)) {
        return Err(parse_err(
            format!("/strategies/{}", pointer_escape(extra)),
            "unknown player",
        ));
    }
    let mut strategies = Vec::with_capacity(players.len());
    for p in &players {
        let base = format!("/strategies/{}", pointer_escape(p));
        let entry = strat_obj
            .get(p)
            .ok_or_else(|| parse_err(&base, "missing strategy set"))?;
        let entry = as_object(entry, &base)?;
        let elements = entry
            .get("elements")
            .ok_or_else(|| parse_err(&base, "missing \"elements\""))?;
        let elements: Vec<String> = as_array(elements, &format!("{base}/elements"))?
            .iter()
            .enumerate()
            .map(|(k, v)| as_str(v, &format!("{base}/elements/{k}")).map(str::to_string))
            .collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        if let Some(order) = entry.get("order") {
            for (k, pair) in as_array(order, &format!("{base}/order"))?
                .iter()
                .enumerate()
            {
                let at = format!("{base}/order/{k}");
                let pair = as_array(pair, &at)?;
                if pair.len() != 2 {
                    return Err(parse_err(at, "order pair must have two entries"));
                }
                pairs.push((as_str(&pair[0], &at)?, as_str(&pair[1], &at)?));
            }
        }
        let poset = Poset::new(elements, pairs).map_err(|e| parse_err(&base, e.to_string()))?;
        strategies.push(poset);
    }

    let feasible = match field("feasible")? {
        Value::String(s) if s == "product" => Feasible::Product,
        Value::Array(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (k, prof) in list.iter().enumerate() {
                let at = format!("/feasible/{k}");
                let prof = as_array(prof, &at)?;
                if prof.len() != players.len() {
                    return Err(parse_err(
                        at,
                        format!(
                            "profile has {} entries for {} players",
                            prof.len(),
                            players.len()
                        ),
                    ));
                }
                let coords = prof
                    .iter()
                    .zip(&strategies)
                    .map(|(v, s)| {
                        let n = as_str(v, &at)?;
                        s.index_of(n).map_err(|e| parse_err(&at, e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(coords);
            }
            Feasible::Profiles(out)
        }
        _ => {
            return Err(parse_err(
                "/feasible",
                "expected \"product\" or an array of profiles",
            ))
        }
    };

    let pay_obj = as_object(field("payoffs")?, "/payoffs")?;
    if let Some(extra) = pay_obj.keys().find(|k| !players.contains(k)) {
        return Err(parse_err(
            format!("/payoffs/{}", pointer_escape(extra)),
            "unknown player",
        ));
    }
    let mut tables: Vec<HashMap<Vec<usize>, Rational>> = Vec::with_capacity(players.len());
    for p in &players {
        let base = format!("/payoffs/{}", pointer_escape(p));
        let mut table = HashMap::new();
        if let Some(obj) = pay_obj.get(p) {
            for (key, v) in as_object(obj, &base)? {
                let at = format!("{base}/{}", pointer_escape(key));
                let names: Vec<&str> = key.split('|').collect();
                if names.len() != players.len() {
                    return Err(parse_err(
                        at,
                        "profile key has the wrong number of strategies",
                    ));
                }
                let coords = names
                    .iter()
                    .zip(&strategies)
                    .map(|(n, s)| s.index_of(n).map_err(|e| parse_err(&at, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                let value = match v {
                    Value::String(s) => s
                        .parse::<Rational>()
                        .map_err(|e| parse_err(&at, e.to_string()))?,
                    _ => return Err(parse_err(at, "payoff must be a rational string")),
                };
                table.insert(coords, value);
            }
        }
        tables.push(table);
    }
    let game = Game::new(name, players, strategies, feasible, product_cap, |i, x| {
        tables[i].get(x).cloned()
    })?;
    for (i, table) in tables.iter().enumerate() {
        let mut stray: Vec<&Vec<usize>> = table.keys().filter(|c| game.id_of(c).is_err()).collect();
        stray.sort();
        if let Some(coords) = stray.first() {
            let key: Vec<&str> = coords
                .iter()
                .enumerate()
                .map(|(j, &s)| game.strategies(j).name(s))
                .collect();
            return Err(parse_err(
                format!(
                    "/payoffs/{}/{}",
                    pointer_escape(&game.players()[i]),
                    key.join("|")
                ),
                "profile is not feasible",
            ));
        }
    }
    Ok(game)
}

/// Canonical document: order pairs are the Hasse covering pairs, profiles
/// and payoff keys are in lexicographic strategy order.
pub fn to_value(g: &Game) -> Value {
    let mut strategies = IndexMap::new();
    for (i, p) in g.players().iter().enumerate() {
        let s = g.strategies(i);
        let order: Vec<[&str; 2]> = s
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| [s.name(a), s.name(b)])
            .collect();
        strategies.insert(p.clone(), json!({"elements": s.elements(), "order": order}));
    }
    let feasible = if g.is_product_form() {
        json!("product")
    } else {
        Value::Array(
            (0..g.num_profiles())
                .map(|x| {
                    let c = g.coords(x);
                    json!(c
                        .iter()
                        .enumerate()
                        .map(|(i, &s)| g.strategies(i).name(s))
                        .collect::<Vec<_>>())
                })
                .collect(),
        )
    };
    let mut payoffs = IndexMap::new();
    for (i, p) in g.players().iter().enumerate() {
        let table: IndexMap<String, String> = (0..g.num_profiles())
            .map(|x| (g.profile_key(x), g.payoff(i, x).to_string()))
            .collect();
        payoffs.insert(p.clone(), table);
    }
    let mut doc = Map::new();
    if let Some(n) = g.name() {
        doc.insert("name".into(), json!(n));
    }
    doc.insert("players".into(), json!(g.players()));
    doc.insert("strategies".into(), json!(strategies));
    doc.insert("feasible".into(), feasible);
    doc.insert("payoffs".into(), json!(payoffs));
    Value::Object(doc)
}

/// Pretty-printed canonical document with a trailing newline.
pub fn serialize_game(g: &Game) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(g)).expect("values serialize");
    s.push('\n');
    s
}
