from entrobound_core.output.report_writer import OUTPUT_FORMATS, ReportWriter, format_float
