use persr_core::{algebra::hochster_table, PrimeField, SimplicialComplex};

#[test]
fn readme_example() -> persr_core::Result<()> {
    let bipyramid = SimplicialComplex::from_facets(5, vec![
        vec![0, 1, 3], vec![0, 1, 4], vec![1, 2, 3],
        vec![1, 2, 4], vec![0, 2, 3], vec![0, 2, 4],
    ])?;
    let table = hochster_table(&bipyramid, PrimeField::new(2)?)?;
    assert_eq!(table.get(2, 5), 1);
    Ok(())
}
