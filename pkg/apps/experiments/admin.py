"""
Admin interface for experiment runs.
"""
from django.contrib import admin

from .models import EvalRecord, ExperimentRun, RunLog


class EvalRecordInline(admin.TabularInline):
    model = EvalRecord
    extra = 0
    readonly_fields = ['eval_n', 'accuracy', 'wallclock_s', 'created_at']


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """Admin interface for ExperimentRun."""

    list_display = [
        'config_hash',
        'seed',
        'model_display',
        'task',
        'train_n',
        'status',
        'best_epoch',
        'wallclock_s',
    ]
    list_filter = ['status', 'family', 'aggregator', 'task']
    search_fields = ['config_hash', 'task']
    readonly_fields = ['created_at', 'started_at', 'completed_at']
    inlines = [EvalRecordInline]

    def model_display(self, obj):
        """Show the model as e.g. "3-ary nlm (max)"."""
        return f"{obj.max_arity}-ary {obj.family} ({obj.aggregator})"
    model_display.short_description = 'Model'


@admin.register(RunLog)
class RunLogAdmin(admin.ModelAdmin):
    """Admin interface for RunLog."""

    list_display = ['run', 'log_type', 'message', 'timestamp']
    list_filter = ['log_type', 'timestamp']
    readonly_fields = ['timestamp']
