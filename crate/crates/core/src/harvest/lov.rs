use log::info;
use serde_json::Value;

use super::{dedupe, filter_pipeline, HarvestError, HarvestOutcome, HarvestRecord, Harvester, Payload, Repository, BODY_IS_RDF, BUCKET_IS_2XX, RDF_XML, TURTLE};

pub const LOV_BASE: &str = "https://lov.linkeddata.es/dataset/lov";

impl Harvester<'_> {
    pub fn lov_list(&self) -> Result<Vec<HarvestRecord>, HarvestError> {
        let url = format!("{}/api/v2/vocabulary/list", self.cfg.lov_base.trim_end_matches('/'));
        let (listing, _) = self.get_json(&url)?;
        let entries = listing.as_array().ok_or_else(|| HarvestError::Malformed("vocabulary list is not an array".into()))?;
        let mut out = Vec::new();
        for e in entries {
            let Some(prefix) = e.get("prefix").and_then(Value::as_str) else { continue };
            let mut rec = HarvestRecord::new(Repository::Lov, prefix, e.clone());
            rec.document_url = e.get("uri").or_else(|| e.get("nsp")).and_then(Value::as_str).map(str::to_string);
            out.push(rec);
        }
        let out = dedupe(out);
        info!("lov: {} vocabularies listed", out.len());
        Ok(out)
    }

    /// Dereferences a vocabulary, asking again for Turtle when RDF/XML yields HTML.
    pub fn fetch_vocabulary(&self, rec: HarvestRecord) -> HarvestRecord {
        let first = self.fetch_document(rec.clone(), RDF_XML);
        if first.payload != Some(Payload::Html) {
            return first;
        }
        let second = self.fetch_document(rec, TURTLE);
        if matches!(second.payload, Some(Payload::Rdf { triples, .. }) if triples > 0) {
            second
        } else {
            first
        }
    }

    pub fn lov_pipeline(&self) -> Result<HarvestOutcome, HarvestError> {
        let records = self.lov_list()?;
        let listed = records.len();
        let fetched = self.map_concurrent(records, |r| self.fetch_vocabulary(r));
        let buckets = super::bucket_counts(&fetched);
        let result = filter_pipeline(fetched, &[BUCKET_IS_2XX, BODY_IS_RDF]);
        let surviving = result.survivors.len();
        let mut all = result.rejected;
        all.extend(result.survivors);
        Ok(HarvestOutcome { repository: Repository::Lov, listed, listing_retries: 0, buckets, steps: result.steps, surviving, records: all })
    }
}
