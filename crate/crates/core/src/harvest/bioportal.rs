use log::{info, warn};
use serde_json::{json, Value};

use super::{dedupe, filter_pipeline, HarvestError, HarvestOutcome, HarvestRecord, Harvester, Repository, BODY_NONEMPTY, FORMAT_IS_OWL, RDF_XML, STATUS_IS_PRODUCTION};

pub const BIOPORTAL_BASE: &str = "https://data.bioontology.org";

impl Harvester<'_> {
    fn bp_url(&self, path: &str) -> String {
        format!("{}{}", self.cfg.bioportal_base.trim_end_matches('/'), path)
    }

    /// Lists every ontology with its latest submission and categories.
    pub fn bioportal_list(&self) -> Result<(Vec<HarvestRecord>, u32), HarvestError> {
        if self.cfg.api_key.as_deref().is_none_or(str::is_empty) {
            return Err(HarvestError::MissingApiKey);
        }
        let (listing, mut retries) = self.get_json(&self.bp_url("/ontologies"))?;
        let entries = listing.as_array().ok_or_else(|| HarvestError::Malformed("/ontologies is not an array".into()))?;
        match self.get_json(&self.bp_url("/categories")) {
            Ok((_, r)) => retries += r,
            Err(e) => warn!("category listing unavailable: {e}"),
        }
        let mut base = Vec::new();
        for e in entries {
            let Some(acr) = e.get("acronym").and_then(Value::as_str) else {
                warn!("ontology entry without acronym skipped");
                continue;
            };
            let mut rec = HarvestRecord::new(Repository::Bioportal, acr, json!({ "ontology": e }));
            rec.document_url = Some(
                e.pointer("/links/download").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| self.bp_url(&format!("/ontologies/{acr}/download"))),
            );
            base.push(rec);
        }
        let base = dedupe(base);
        info!("bioportal: {} ontologies listed", base.len());
        let retries = std::sync::atomic::AtomicU32::new(retries);
        let mut out = Vec::with_capacity(base.len());
        for batch in base.chunks(self.cfg.batch_size.max(1)) {
            out.extend(self.map_concurrent(batch.to_vec(), |mut rec| {
                let acr = rec.id.clone();
                let mut errors = Vec::new();
                match self.get_json(&self.bp_url(&format!("/ontologies/{acr}/latest_submission"))) {
                    Ok((sub, r)) => {
                        retries.fetch_add(r, std::sync::atomic::Ordering::Relaxed);
                        rec.declared_format = sub.get("hasOntologyLanguage").and_then(Value::as_str).unwrap_or_default().to_string();
                        rec.metadata["latest_submission"] = sub;
                    }
                    Err(e) => {
                        errors.push(format!("latest_submission: {e}"));
                        rec.metadata["latest_submission"] = Value::Null;
                    }
                }
                match self.get_json(&self.bp_url(&format!("/ontologies/{acr}/categories"))) {
                    Ok((cats, r)) => {
                        retries.fetch_add(r, std::sync::atomic::Ordering::Relaxed);
                        rec.metadata["categories"] = cats;
                    }
                    Err(e) => errors.push(format!("categories: {e}")),
                }
                if !errors.is_empty() {
                    rec.metadata["enrichment_errors"] = json!(errors);
                }
                rec
            }));
        }
        Ok((out, retries.into_inner()))
    }

    pub fn bioportal_pipeline(&self) -> Result<HarvestOutcome, HarvestError> {
        let (records, listing_retries) = self.bioportal_list()?;
        let listed = records.len();
        let first = filter_pipeline(records, &[FORMAT_IS_OWL, STATUS_IS_PRODUCTION]);
        let fetched = self.map_concurrent(first.survivors, |r| self.fetch_document(r, RDF_XML));
        let buckets = super::bucket_counts(&fetched);
        let second = filter_pipeline(fetched, &[BODY_NONEMPTY]);
        let mut steps = first.steps;
        steps.extend(second.steps);
        let surviving = second.survivors.len();
        let mut all = first.rejected;
        all.extend(second.rejected);
        all.extend(second.survivors);
        Ok(HarvestOutcome { repository: Repository::Bioportal, listed, listing_retries, buckets, steps, surviving, records: all })
    }
}
