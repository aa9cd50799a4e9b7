use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Cache, Config};
use crate::conj::{verify_conjugacy_theorem, ConjOptions};
use crate::error::{Error, Result};
use crate::gkh::gkh_build_desc_capped;
use crate::gkh::theorem_a::valid_r_values;
use crate::soi::soi_classify;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogEntry {
    pub table: u8,
    /// Row template within the table, from 1.
    pub row: u8,
    pub descriptor: String,
    pub order: usize,
    pub reflection_count: usize,
    pub quotient_tag: String,
    pub condition: String,
    pub isomorphism_notes: Vec<String>,
    pub systems: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Built {
    descriptor: String,
    order: usize,
    reflection_count: usize,
    quotient_tag: String,
}

/// Memoised theorem reports keyed by tag and parameter.
#[derive(Default)]
struct Certs {
    done: HashMap<(String, Option<u32>), bool>,
}

impl Certs {
    fn ok(&mut self, tag: &str, m: Option<u32>) -> bool {
        *self.done.entry((tag.to_string(), m)).or_insert_with(|| {
            verify_conjugacy_theorem(tag, &ConjOptions { m, r: None }).map(|r| r.pass()).unwrap_or(false)
        })
    }
}

struct Emitter<'a> {
    cfg: &'a Config,
    cache: Option<Cache>,
    certs: Certs,
    out: Vec<CatalogEntry>,
}

impl Emitter<'_> {
    fn build(&self, desc: &str) -> Result<Built> {
        let go = || -> Result<Built> {
            let g = gkh_build_desc_capped(desc, self.cfg.closure_cap)?;
            let quotient_tag = g.phi.quotient.identify().map(|t| t.to_string()).unwrap_or_else(|_| "?".into());
            Ok(Built { descriptor: g.descriptor.clone(), order: g.order(), reflection_count: g.reflection_count(), quotient_tag })
        };
        match &self.cache {
            Some(c) => c.get_or(&format!("entry:{desc}"), go),
            None => go(),
        }
    }

    fn push(&mut self, table: u8, row: u8, desc: &str, condition: &str, notes: Vec<String>) -> Result<()> {
        let b = self.build(desc)?;
        let systems = if table == 3 || table == 4 {
            soi_classify(desc)?
                .report()
                .systems
                .into_iter()
                .map(|s| if s.kind == "family" { format!("<<{},{}>> ({})", s.u, s.v, s.direction) } else { format!("<<{},{}>>", s.u, s.v) })
                .collect()
        } else {
            Vec::new()
        };
        self.out.push(CatalogEntry {
            table,
            row,
            descriptor: b.descriptor,
            order: b.order,
            reflection_count: b.reflection_count,
            quotient_tag: b.quotient_tag,
            condition: condition.to_string(),
            isomorphism_notes: notes,
            systems,
        });
        Ok(())
    }

    fn note(&mut self, target: &str, tags: &[(&str, Option<u32>)]) -> Vec<String> {
        if tags.iter().all(|(t, m)| self.certs.ok(t, *m)) {
            let names: Vec<&str> = tags.iter().map(|(t, _)| *t).collect();
            vec![format!("≅ {target} ({})", names.join(", "))]
        } else {
            Vec::new()
        }
    }

    fn polyhedral_notes(&mut self, desc: &str) -> Vec<String> {
        match desc {
            "G(T,C:2,rho:delta)" => [self.note("G(O,1,beta)", &[("TO", None)]), self.note("Cbox2(4,O)", &[("boxdot", None)])].concat(),
            "G(O,1,beta)" => {
                [self.note("G(T,C:2,rho:delta)", &[("TO", None)]), self.note("Cbox2(4,O)", &[("boxdot", None)])].concat()
            }
            "G(T,1,rho:delta)" => self.note("ST(12)", &[("primST(i)", None)]),
            "G(O,1,rho:delta)" => self.note("ST(13)", &[("primST(i)", None)]),
            "G(I,1,rho:j)" => self.note("ST(22)", &[("primST(i)", None)]),
            "G(O,C:2,id)" => self.note("Cbox(4,O)", &[("boxdot", None)]),
            "G(I,C:2,id)" => self.note("Cbox(4,I)", &[("boxdot", None)]),
            _ => Vec::new(),
        }
    }

    fn polyhedral(&mut self, table: u8, first_row: u8, rows: &[&str]) -> Result<()> {
        for (i, desc) in rows.iter().enumerate() {
            let notes = self.polyhedral_notes(desc);
            self.push(table, first_row + i as u8, desc, "", notes)?;
        }
        Ok(())
    }

    fn table1(&mut self) -> Result<()> {
        let max = self.cfg.max_m;
        for m in 1..=max {
            let notes = self.note(&format!("ST({},{m},2)", 2 * m), &[("dihedral-cyclic", Some(m))]);
            self.push(1, 1, &format!("G(D:{m},1,psi:1)"), "all m", notes)?;
            for l in (3..=m).filter(|l| l % 2 == 1 && m % l == 0) {
                for r in valid_r_values(m, l) {
                    self.push(1, 2, &format!("G(D:{m},C:{l},psi:{r})"), "l != 1 odd, l | m", Vec::new())?;
                }
            }
            for l in (2..=2 * m).filter(|l| l % 2 == 0 && (2 * m) % l == 0) {
                for r in valid_r_values(m, l) {
                    self.push(1, 3, &format!("G(D:{m},C:{l},psi:{r})"), "l even, l | 2m", Vec::new())?;
                }
            }
            self.push(1, 4, &format!("G(D:{m},D:{m},id)"), "all m", Vec::new())?;
            if m % 2 == 0 {
                self.push(1, 5, &format!("G(D:{m},D:{},id)", m / 2), "m even", Vec::new())?;
            }
        }
        Ok(())
    }

    fn table3(&mut self) -> Result<()> {
        let n = self.note("ST(2,1,2)", &[("dihedral-cyclic", Some(1))]);
        self.push(3, 1, "G(D:1,1,psi:1)", "", n)?;
        let n = self.note("ST(4,2,2)", &[("dihedral-cyclic", Some(2))]);
        self.push(3, 2, "G(D:2,1,psi:1)", "", n)?;
        let n = self.note("ST(4,2,2)", &[("dihedral-odd", Some(1)), ("dihedral-cyclic", Some(2))]);
        self.push(3, 3, "G(D:1,C:2,psi:1)", "", n)?;
        self.push(3, 4, "G(D:2,C:2,psi:1)", "", Vec::new())?;
        for m in 3..=self.cfg.max_m {
            let n = self.note(&format!("ST({},{m},2)", 2 * m), &[("dihedral-cyclic", Some(m))]);
            self.push(3, 5, &format!("G(D:{m},1,psi:1)"), "m > 2", n)?;
        }
        for m in 3..=self.cfg.max_m {
            self.push(3, 6, &format!("G(D:{m},C:2,psi:1)"), "m > 2", Vec::new())?;
        }
        for m in (3..=self.cfg.max_m / 2).filter(|m| m % 2 == 1) {
            let n = self.note(&format!("G(D:{m},C:2,psi:1)"), &[("dihedral-odd", Some(m))]);
            self.push(3, 7, &format!("G(D:{},1,psi:{})", 2 * m, 2 * m - 1), "m odd", n)?;
        }
        Ok(())
    }

    fn table5(&mut self) -> Result<()> {
        let max = self.cfg.max_m;
        for m in 1..=max {
            for l in (2..=2 * m).filter(|l| (2 * m) % l == 0 && m * l > 2) {
                for r in valid_r_values(m, l) {
                    let notes = if m % 2 == 1 && l == 2 && r == 1 {
                        self.note(&format!("G(D:{},1,psi:{})", 2 * m, 2 * m - 1), &[("dihedral-odd", Some(m))])
                    } else {
                        Vec::new()
                    };
                    self.push(5, 1, &format!("G(D:{m},C:{l},psi:{r})"), "l != 1, l | 2m, ml > 2", notes)?;
                }
            }
        }
        for m in 2..=max {
            self.push(5, 2, &format!("G(D:{m},D:{m},id)"), "m >= 2", Vec::new())?;
        }
        for m in (2..=max / 2).filter(|m| 2 * m <= max) {
            self.push(5, 3, &format!("G(D:{},D:{m},id)", 2 * m), "m >= 2", Vec::new())?;
        }
        self.polyhedral(
            5,
            4,
            &[
                "G(T,T,id)",
                "G(T,D:2,rho:delta)",
                "G(T,C:2,rho:delta)",
                "G(O,O,id)",
                "G(O,T,id)",
                "G(O,D:2,id)",
                "G(O,C:2,id)",
                "G(I,I,id)",
                "G(I,C:2,id)",
                "G(I,C:2,theta)",
                "G(I,1,theta)",
            ],
        )?;
        Ok(())
    }
}

pub const TABLE2: [&str; 15] = [
    "G(T,T,id)",
    "G(T,D:2,rho:delta)",
    "G(T,C:2,rho:delta)",
    "G(T,1,rho:delta)",
    "G(O,O,id)",
    "G(O,T,id)",
    "G(O,D:2,id)",
    "G(O,C:2,id)",
    "G(O,1,beta)",
    "G(O,1,rho:delta)",
    "G(I,I,id)",
    "G(I,C:2,id)",
    "G(I,C:2,theta)",
    "G(I,1,theta)",
    "G(I,1,rho:j)",
];

pub const TABLE4: [&str; 7] = [
    "G(T,C:2,rho:delta)",
    "G(T,1,rho:delta)",
    "G(O,C:2,id)",
    "G(O,1,beta)",
    "G(O,1,rho:delta)",
    "G(I,C:2,id)",
    "G(I,1,rho:j)",
];

/// Entries of table 1 to 5, with parametric rows expanded up to `cfg.max_m`.
pub fn emit_table(which: u8, cfg: &Config) -> Result<Vec<CatalogEntry>> {
    cfg.validate()?;
    let mut e = Emitter { cfg, cache: cfg.cache(), certs: Certs::default(), out: Vec::new() };
    match which {
        1 => e.table1()?,
        2 => e.polyhedral(2, 1, &TABLE2)?,
        3 => e.table3()?,
        4 => e.polyhedral(4, 1, &TABLE4)?,
        5 => e.table5()?,
        _ => return Err(Error::InvalidParams(format!("no table {which}"))),
    }
    Ok(e.out)
}

pub fn render_jsonl(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        s.push_str(&serde_json::to_string(e).expect("entry serialises"));
        s.push('\n');
    }
    s
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn render_markdown(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    let with_systems = entries.iter().any(|e| !e.systems.is_empty());
    if with_systems {
        s.push_str("| row | group | systems | isomorphisms | order |\n|---|---|---|---|---:|\n");
    } else {
        s.push_str("| row | group | K/H | conditions | isomorphisms | order | reflections |\n|---|---|---|---|---|---:|---:|\n");
    }
    for e in entries {
        let notes = cell(&e.isomorphism_notes.join("; "));
        if with_systems {
            let _ = writeln!(s, "| {} | {} | {} | {} | {} |", e.row, e.descriptor, e.systems.join(", "), notes, e.order);
        } else {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} |",
                e.row, e.descriptor, e.quotient_tag, cell(&e.condition), notes, e.order, e.reflection_count
            );
        }
    }
    s
}
