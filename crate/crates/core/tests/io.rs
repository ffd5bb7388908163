use willmore_core::mesh::{load_mesh, make_torus, save_mesh, MeshFormat};
use willmore_core::{Error, Vec3};

#[test]
fn off_obj_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let m = make_torus(Vec3::new(4.0, 0.5, -1.0), 1.5, 0.4, 16, 8).unwrap();
    let off = dir.path().join("torus.off");
    let obj = dir.path().join("torus.obj");
    save_mesh(&m, &off, MeshFormat::Off).unwrap();
    let a = load_mesh(&off, MeshFormat::Off).unwrap();
    save_mesh(&a, &obj, MeshFormat::Obj).unwrap();
    let b = load_mesh(&obj, MeshFormat::from_path(&obj).unwrap()).unwrap();
    assert_eq!(b.name(), Some("torus"));
    assert_eq!(b.faces(), m.faces());
    assert_eq!(b.vertices(), m.vertices());
    assert_eq!(b.euler_characteristic(), 0);
}

#[test]
fn missing_and_unwritable_paths_are_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.off");
    assert!(matches!(
        load_mesh(&missing, MeshFormat::Off),
        Err(Error::Io { .. })
    ));
    let m = make_torus(Vec3::new(4.0, 0.0, 0.0), 1.5, 0.4, 8, 6).unwrap();
    let unwritable = dir.path().join("no_such_dir").join("out.off");
    assert!(matches!(
        save_mesh(&m, &unwritable, MeshFormat::Off),
        Err(Error::Io { .. })
    ));
}

#[test]
fn malformed_file_reports_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.off");
    std::fs::write(&p, "OFF\n3 1 0\n0 0 0\n1 0 0\n").unwrap();
    assert!(matches!(
        load_mesh(&p, MeshFormat::Off),
        Err(Error::Parse { .. })
    ));
}
