use std::ffi::{CStr, CString};
use std::ptr;

use austere_ffi::*;

fn last_error() -> String {
    let p = austere_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn diagram(label: &str, r: usize, l: usize) -> *mut AustereDiagram {
    let label = CString::new(label).unwrap();
    let mut d = ptr::null_mut();
    let st = unsafe { austere_diagram_new(label.as_ptr(), r, l, &mut d) };
    assert_eq!(st, AustereStatus::Ok, "{}", last_error());
    d
}

fn collect(list: *const AustereRootList) -> Vec<Vec<i64>> {
    let n = unsafe { austere_root_list_len(list) };
    let r = unsafe { austere_root_list_rank(list) };
    (0..n)
        .map(|i| {
            let mut buf = vec![0i64; r];
            let st = unsafe { austere_root_list_get(list, i, buf.as_mut_ptr(), buf.len()) };
            assert_eq!(st, AustereStatus::Ok);
            buf
        })
        .collect()
}

#[test]
fn root_system_counts() {
    let s = CString::new("E8").unwrap();
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { austere_root_system_new(s.as_ptr(), &mut rs) }, AustereStatus::Ok);
    assert_eq!(unsafe { austere_root_system_rank(rs) }, 8);
    assert_eq!(unsafe { austere_root_system_root_count(rs) }, 240);
    unsafe { austere_root_system_free(rs) };
}

#[test]
fn bad_descriptor_is_input_error() {
    let s = CString::new("Q7").unwrap();
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { austere_root_system_new(s.as_ptr(), &mut rs) }, AustereStatus::InputError);
    assert!(rs.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_arguments() {
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { austere_root_system_new(ptr::null(), &mut rs) }, AustereStatus::NullPointer);
    assert_eq!(unsafe { austere_root_system_rank(ptr::null()) }, 0);
    unsafe {
        austere_root_system_free(ptr::null_mut());
        austere_diagram_free(ptr::null_mut());
        austere_root_list_free(ptr::null_mut());
        austere_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8() {
    let bytes = [0xffu8, 0xfe, 0];
    let mut rs = ptr::null_mut();
    let st = unsafe { austere_root_system_new(bytes.as_ptr().cast(), &mut rs) };
    assert_eq!(st, AustereStatus::InvalidUtf8);
}

#[test]
fn eiii_real_and_imaginary() {
    let d = diagram("EIII", 6, 2);
    let mut real = ptr::null_mut();
    let mut imag = ptr::null_mut();
    assert_eq!(unsafe { austere_real_roots(d, &mut real) }, AustereStatus::Ok);
    assert_eq!(unsafe { austere_imaginary_roots(d, &mut imag) }, AustereStatus::Ok);
    let real_roots = collect(real);
    let imag_roots = collect(imag);
    // Real roots come in +/- pairs and are disjoint from the imaginary ones.
    assert_eq!(real_roots.len() % 2, 0);
    assert!(real_roots.iter().all(|r| real_roots.contains(&r.iter().map(|c| -c).collect())));
    assert!(real_roots.iter().all(|r| !imag_roots.contains(r)));
    // The black nodes of EIII span an A3 subsystem.
    assert_eq!(imag_roots.len(), 12);
    unsafe {
        austere_root_list_free(real);
        austere_root_list_free(imag);
        austere_diagram_free(d);
    }
}

#[test]
fn root_list_bounds() {
    let d = diagram("AI", 2, 2);
    let mut real = ptr::null_mut();
    assert_eq!(unsafe { austere_real_roots(d, &mut real) }, AustereStatus::Ok);
    let n = unsafe { austere_root_list_len(real) };
    assert_eq!(n, 6);
    let mut buf = [0i64; 1];
    assert_eq!(
        unsafe { austere_root_list_get(real, 0, buf.as_mut_ptr(), 1) },
        AustereStatus::OutOfRange
    );
    let mut buf = [0i64; 2];
    assert_eq!(
        unsafe { austere_root_list_get(real, n, buf.as_mut_ptr(), 2) },
        AustereStatus::OutOfRange
    );
    unsafe {
        austere_root_list_free(real);
        austere_diagram_free(d);
    }
}

#[test]
fn inadmissible_diagram() {
    let label = CString::new("AII").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { austere_diagram_new(label.as_ptr(), 4, 1, &mut d) }, AustereStatus::InputError);
    assert!(d.is_null());
}

#[test]
fn diagram_json_parses() {
    let d = diagram("EIII", 6, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { austere_diagram_json(d, &mut s) }, AustereStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.is_object());
    unsafe {
        austere_string_free(s);
        austere_diagram_free(d);
    }
}

#[test]
fn austere_a2() {
    let s = CString::new("A2").unwrap();
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { austere_root_system_new(s.as_ptr(), &mut rs) }, AustereStatus::Ok);
    let mut verdict = true;
    let num = [3i64, 1];
    assert_eq!(
        unsafe { austere_is_austere(rs, num.as_ptr(), ptr::null(), 2, &mut verdict) },
        AustereStatus::Ok
    );
    assert!(!verdict);
    let den = [1i64, 0];
    assert_eq!(
        unsafe { austere_is_austere(rs, num.as_ptr(), den.as_ptr(), 2, &mut verdict) },
        AustereStatus::InputError
    );
    unsafe { austere_root_system_free(rs) };
}

#[test]
fn formula_eval() {
    let f = CString::new("min(i+j, m+n-(i+j))").unwrap();
    let p = CString::new("n=5,m=3,i=1,j=2").unwrap();
    let mut v = 0;
    let mut is_bool = true;
    assert_eq!(unsafe { austere_formula_eval(f.as_ptr(), p.as_ptr(), &mut v, &mut is_bool) }, AustereStatus::Ok);
    assert_eq!((v, is_bool), (3, false));

    let c = CString::new("n odd").unwrap();
    assert_eq!(unsafe { austere_formula_eval(c.as_ptr(), p.as_ptr(), &mut v, &mut is_bool) }, AustereStatus::Ok);
    assert_eq!((v, is_bool), (1, true));

    let unbound = CString::new("n+q").unwrap();
    assert_eq!(
        unsafe { austere_formula_eval(unbound.as_ptr(), ptr::null(), &mut v, ptr::null_mut()) },
        AustereStatus::InputError
    );
}

#[test]
fn error_cleared_on_success() {
    let s = CString::new("Q7").unwrap();
    let mut rs = ptr::null_mut();
    unsafe { austere_root_system_new(s.as_ptr(), &mut rs) };
    assert!(!austere_last_error().is_null());
    let s = CString::new("A1").unwrap();
    assert_eq!(unsafe { austere_root_system_new(s.as_ptr(), &mut rs) }, AustereStatus::Ok);
    assert!(austere_last_error().is_null());
    unsafe { austere_root_system_free(rs) };
}

#[test]
fn header_is_current() {
    let header = include_str!("../include/austere.h");
    for name in [
        "austere_root_system_new",
        "austere_diagram_json",
        "austere_root_list_get",
        "austere_is_austere",
        "austere_formula_eval",
        "AUSTERE_STATUS_PANIC",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
