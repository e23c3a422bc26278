use std::fmt;

use num_complex::Complex;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::blade::BladeIndex;
use super::element::CliffordElement;

/// Serialized as `{"e": [re, im], "e0": [re, im], …}` in canonical blade order.
/// Zero coefficients are omitted; missing labels deserialize as zero.
impl Serialize for CliffordElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let nonzero: Vec<BladeIndex> =
            BladeIndex::canonical_order().into_iter().filter(|b| self.coeff(*b) != Complex::new(0.0, 0.0)).collect();
        let mut map = serializer.serialize_map(Some(nonzero.len()))?;
        for b in nonzero {
            let c = self.coeff(b);
            map.serialize_entry(&b.label(), &[c.re, c.im])?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CliffordElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ElementVisitor;

        impl<'de> Visitor<'de> for ElementVisitor {
            type Value = CliffordElement;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from blade labels to [re, im] pairs")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = CliffordElement::zero();
                while let Some((label, [re, im])) = access.next_entry::<String, [f64; 2]>()? {
                    let b = BladeIndex::from_label(&label)
                        .ok_or_else(|| serde::de::Error::custom(format!("unknown blade label {label:?}")))?;
                    out.set_coeff(b, out.coeff(b) + Complex::new(re, im));
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(ElementVisitor)
    }
}
