//! Text renderings of character tables: aligned plain text and CSV.

use glnchar::chartable::CharacterTable;

pub fn table_pretty(table: &CharacterTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "GL_{}(F_{}) character table ({} x {}), conductor {}\n",
        table.n,
        table.q,
        table.characters.len(),
        table.classes.len(),
        table.conductor
    ));
    out.push_str("\nclasses:\n");
    for (j, c) in table.classes.iter().enumerate() {
        out.push_str(&format!(
            "  c{j}: {} size={} centralizer={}\n",
            c.label, c.size, c.centralizer
        ));
    }
    out.push_str("\ncharacters:\n");
    for (i, c) in table.characters.iter().enumerate() {
        out.push_str(&format!("  x{i}: {} degree={}\n", c.label, c.degree));
    }
    out.push_str("\nvalues (rows x_i, columns c_j):\n");
    let rendered: Vec<Vec<String>> = table
        .values
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    let widths: Vec<usize> = (0..table.classes.len())
        .map(|j| {
            rendered
                .iter()
                .map(|row| row[j].len())
                .max()
                .unwrap_or(1)
                .max(format!("c{j}").len())
        })
        .collect();
    out.push_str("      ");
    for (j, w) in widths.iter().enumerate() {
        out.push_str(&format!(" {:>w$}", format!("c{j}"), w = w));
    }
    out.push('\n');
    for (i, row) in rendered.iter().enumerate() {
        out.push_str(&format!("  {:<4}", format!("x{i}")));
        for (j, w) in widths.iter().enumerate() {
            out.push_str(&format!(" {:>w$}", row[j], w = w));
        }
        out.push('\n');
    }
    out
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn table_csv(table: &CharacterTable) -> String {
    let mut out = String::new();
    let mut header = vec!["character/class".to_string(), "degree".to_string()];
    header.extend(table.classes.iter().map(|c| c.label.to_string()));
    out.push_str(
        &header
            .iter()
            .map(|h| csv_escape(h))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    let mut sizes = vec!["class size".to_string(), String::new()];
    sizes.extend(table.classes.iter().map(|c| c.size.to_string()));
    out.push_str(
        &sizes
            .iter()
            .map(|h| csv_escape(h))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for (i, c) in table.characters.iter().enumerate() {
        let mut row = vec![c.label.to_string(), c.degree.to_string()];
        row.extend(table.values[i].iter().map(|v| v.to_string()));
        out.push_str(
            &row.iter()
                .map(|h| csv_escape(h))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
    }
    out
}
