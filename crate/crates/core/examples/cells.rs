//! Pattern matrices, rank functions, cell dimensions and Omega cells.

use fubini::cells::{
    cell_codimension, cell_dimension, omega_cells, omega_pattern_matrix, pattern_matrix, rank_function,
};
use fubini::words::Word;

fn main() -> fubini::Result<()> {
    let w = Word::parse("2331231", Some(3))?;
    println!("PM({w}):\n{}", pattern_matrix(&w));
    println!("dim C_w = {}, codim = {}", cell_dimension(&w), cell_codimension(&w));
    let v = Word::parse("441122", Some(4))?;
    println!("\nOPM({v}):\n{}", omega_pattern_matrix(&v)?);
    println!("rank function: {:?}", rank_function(&v).values());
    let cells: Vec<String> = omega_cells(&v)?.iter().map(|c| c.to_string()).collect();
    println!("Omega cells: {}", cells.join(" "));
    Ok(())
}
