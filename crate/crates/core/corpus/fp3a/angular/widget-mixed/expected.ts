import { Component, OnDestroy, OnInit } from '@angular/core';
import { Observable, Subject, takeUntil } from 'rxjs';

@Component({ selector: 'app-widget', template: '' })
export class WidgetComponent implements OnInit, OnDestroy {
  private readonly destroy$ = new Subject<void>();
  private timeoutId?: ReturnType<typeof setTimeout>;
  value = 0;
  data$!: Observable<number>;

  ngOnInit() {
    this.data$.pipe(takeUntil(this.destroy$)).subscribe(v => (this.value = v));
    this.timeoutId = setTimeout(() => this.flash(), 100);
    window.addEventListener('resize', this.layout);
  }

  ngOnDestroy() {
    console.log('widget destroyed');
    clearTimeout(this.timeoutId);
    window.removeEventListener('resize', this.layout);
    this.destroy$.next();
    this.destroy$.complete();
  }

  layout = () => console.log('layout');

  flash() {}
}
